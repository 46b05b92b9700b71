#include "proofsynth/guide_client.hpp"

#include <csignal>
#include <cstring>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace proofsynth {

GuideReply parse_guide_reply(const std::string& raw) {
  std::string line = raw;
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
  if (line == "NONE") return {GuideReply::Kind::None, {}};
  if (line == "TERM") return {GuideReply::Kind::Term, {}};
  if (line.rfind("TERM ", 0) == 0) return {GuideReply::Kind::Term, lex_term(std::string_view(line).substr(5))};
  return {GuideReply::Kind::Malformed, lex_term(line)};
}

std::string format_guess(const TokenSeq& type_tokens) { return "GUESS " + to_text(type_tokens); }

GuideClient::GuideClient(std::string cmdline, std::chrono::milliseconds timeout)
    : cmdline_(std::move(cmdline)), timeout_(timeout) {
  start();
}

GuideClient::~GuideClient() { stop(); }

void GuideClient::start() {
  int in[2], out[2];
  if (pipe(in) != 0) throw GuideError("pipe: " + std::string(std::strerror(errno)));
  if (pipe(out) != 0) {
    close(in[0]);
    close(in[1]);
    throw GuideError("pipe: " + std::string(std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0) throw GuideError("fork: " + std::string(std::strerror(errno)));
  if (pid_ == 0) {
    dup2(in[0], STDIN_FILENO);
    dup2(out[1], STDOUT_FILENO);
    close(in[0]);
    close(in[1]);
    close(out[0]);
    close(out[1]);
    execl("/bin/sh", "sh", "-c", cmdline_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in[0]);
  close(out[1]);
  to_child_ = in[1];
  from_child_ = out[0];
  // A guide that dies must surface as an error, not a signal.
  std::signal(SIGPIPE, SIG_IGN);
}

void GuideClient::stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    // Give the guide a moment to exit on EOF, then insist.
    for (int i = 0; i < 20; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      usleep(5000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

std::string GuideClient::read_line() {
  auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw GuideError("guide did not answer within the timeout");
    pollfd p{from_child_, POLLIN, 0};
    int r = poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw GuideError("poll: " + std::string(std::strerror(errno)));
    }
    if (r == 0) throw GuideError("guide did not answer within the timeout");
    char buf[4096];
    ssize_t n = read(from_child_, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw GuideError("read: " + std::string(std::strerror(errno)));
    }
    if (n == 0) throw GuideError("guide closed its output");
    buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

GuideReply GuideClient::ask(const TokenSeq& type_tokens) {
  if (to_child_ < 0) throw GuideError("guide is not running");
  std::string msg = format_guess(type_tokens) + "\n";
  std::size_t off = 0;
  while (off < msg.size()) {
    ssize_t n = write(to_child_, msg.data() + off, msg.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw GuideError("guide is not accepting requests: " + std::string(std::strerror(errno)));
    }
    off += static_cast<std::size_t>(n);
  }
  return parse_guide_reply(read_line());
}

}  // namespace proofsynth
