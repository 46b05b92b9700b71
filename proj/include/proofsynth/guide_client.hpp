#pragma once

// Client side of the line protocol spoken by external guides:
//   request   GUESS <type tokens>
//   response  TERM <term tokens> | NONE
// The guide runs as a child process (`/bin/sh -c <cmdline>`) and is spoken
// to over its standard input and output.

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

#include "proofsynth/tokens.hpp"

namespace proofsynth {

class GuideError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GuideReply {
  enum class Kind : std::uint8_t { Term, None, Malformed };
  Kind kind;
  TokenSeq tokens;  // Term: the payload; Malformed: the whole line, lexed
};

// Parses one response line.
GuideReply parse_guide_reply(const std::string& line);
std::string format_guess(const TokenSeq& type_tokens);

class GuideClient {
 public:
  explicit GuideClient(std::string cmdline, std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~GuideClient();
  GuideClient(const GuideClient&) = delete;
  GuideClient& operator=(const GuideClient&) = delete;

  // Sends one request and reads exactly one reply line. Throws GuideError if
  // the guide exits, closes its output or does not answer in time.
  GuideReply ask(const TokenSeq& type_tokens);

  const std::string& cmdline() const { return cmdline_; }

 private:
  void start();
  void stop();
  std::string read_line();

  std::string cmdline_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace proofsynth
