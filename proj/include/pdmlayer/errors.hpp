#ifndef PDMLAYER_ERRORS_HPP
#define PDMLAYER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdm {

struct SingularPoint : std::runtime_error {
  explicit SingularPoint(const std::string& what) : std::runtime_error(what) {}
};

struct OracleInconclusive : std::runtime_error {
  explicit OracleInconclusive(const std::string& what) : std::runtime_error(what) {}
};

struct OperatorOrderExceeded : std::runtime_error {
  explicit OperatorOrderExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct ResidualNonzero : std::runtime_error {
  explicit ResidualNonzero(const std::string& what) : std::runtime_error(what) {}
};

struct ComplexDelta : std::runtime_error {
  explicit ComplexDelta(const std::string& what) : std::runtime_error(what) {}
};

struct ParityMismatch : std::runtime_error {
  explicit ParityMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ParamOutOfRange : std::runtime_error {
  explicit ParamOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateRSpectrum : std::runtime_error {
  explicit DegenerateRSpectrum(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pdm

#endif
