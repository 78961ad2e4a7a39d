#pragma once

#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpmap/analyzer.hpp"

namespace rpmap {

struct ExternalMapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Child process speaking line-delimited JSON: one {"values": {...}} request
// line on its stdin, one {"values": {...}} response line on its stdout.
// Requests are serialized; one in-flight request per child.
class ExternalMap {
 public:
  ExternalMap(FiniteSpace domain, FiniteSpace codomain, VectorSpaceModel model,
              std::vector<std::string> argv, int timeout_ms);
  ~ExternalMap();

  ExternalMap(const ExternalMap&) = delete;
  ExternalMap& operator=(const ExternalMap&) = delete;

  VectorFunction eval(const VectorFunction& f);

 private:
  void spawn();
  std::string exchange_line(const std::string& request);

  FiniteSpace domain_;
  FiniteSpace codomain_;
  VectorSpaceModel model_;
  std::vector<std::string> argv_;
  int timeout_ms_;

  std::mutex mu_;
  int pid_ = -1;
  int child_stdin_ = -1;
  int child_stdout_ = -1;
  std::string buffer_;
};

MapUnderTest external_map(const FiniteSpace& x, const FiniteSpace& y,
                          const VectorSpaceModel& model, const std::vector<std::string>& argv,
                          int timeout_ms);

}  // namespace rpmap
