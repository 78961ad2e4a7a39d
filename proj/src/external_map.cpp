#include "rpmap/external_map.hpp"

#include <csignal>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace rpmap {

ExternalMap::ExternalMap(FiniteSpace domain, FiniteSpace codomain, VectorSpaceModel model,
                         std::vector<std::string> argv, int timeout_ms)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      model_(std::move(model)),
      argv_(std::move(argv)),
      timeout_ms_(timeout_ms) {
  if (argv_.empty()) throw ExternalMapError("external map needs a command");
  spawn();
}

ExternalMap::~ExternalMap() {
  if (child_stdin_ >= 0) close(child_stdin_);
  if (child_stdout_ >= 0) close(child_stdout_);
  if (pid_ > 0) {
    kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

void ExternalMap::spawn() {
  int to_child[2];
  int from_child[2];
  if (pipe(to_child) != 0 || pipe(from_child) != 0)
    throw ExternalMapError("failed to create pipes");

  const int pid = fork();
  if (pid < 0) throw ExternalMapError("fork failed");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    std::vector<char*> args;
    for (auto& a : argv_) args.push_back(a.data());
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  pid_ = pid;
  child_stdin_ = to_child[1];
  child_stdout_ = from_child[0];
  close(to_child[0]);
  close(from_child[1]);
}

std::string ExternalMap::exchange_line(const std::string& request) {
  // write the full request line
  std::size_t written = 0;
  while (written < request.size()) {
    const ssize_t n = write(child_stdin_, request.data() + written, request.size() - written);
    if (n <= 0) throw ExternalMapError("child closed its input");
    written += static_cast<std::size_t>(n);
  }

  // read one full line, bounded by the timeout
  const auto deadline_ms = timeout_ms_;
  int waited_ms = 0;
  for (;;) {
    const auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      return line;
    }
    struct pollfd pfd {
      child_stdout_, POLLIN, 0
    };
    const int step_ms = 50;
    const int r = poll(&pfd, 1, step_ms);
    if (r < 0) throw ExternalMapError("poll failed");
    if (r == 0) {
      waited_ms += step_ms;
      if (waited_ms >= deadline_ms) throw ExternalMapError("external map timed out");
      continue;
    }
    char chunk[4096];
    const ssize_t n = read(child_stdout_, chunk, sizeof(chunk));
    if (n <= 0) throw ExternalMapError("child closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

VectorFunction ExternalMap::eval(const VectorFunction& f) {
  std::lock_guard<std::mutex> lock(mu_);
  const std::string request = jsonio::encode_vector_function(f).dump() + "\n";
  const std::string line = exchange_line(request);
  jsonio::json parsed;
  try {
    parsed = jsonio::json::parse(line);
  } catch (const std::exception& e) {
    throw ExternalMapError(std::string("external map emitted malformed JSON: ") + e.what());
  }
  try {
    return jsonio::decode_vector_function(parsed, codomain_, model_);
  } catch (const jsonio::DecodeError& e) {
    throw ExternalMapError(std::string("external map response rejected: ") + e.what());
  }
}

MapUnderTest external_map(const FiniteSpace& x, const FiniteSpace& y,
                          const VectorSpaceModel& model, const std::vector<std::string>& argv,
                          int timeout_ms) {
  auto child = std::make_shared<ExternalMap>(x, y, model, argv, timeout_ms);
  MapUnderTest t{x, y, model, nullptr};
  t.evaluator = [child](const VectorFunction& f) { return child->eval(f); };
  return t;
}

}  // namespace rpmap
