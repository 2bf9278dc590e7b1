#include "fqreg/error.hpp"

namespace fqreg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::SingularDesign: return "singular-design";
    case ErrorKind::ComponentDegenerate: return "component-degenerate";
    case ErrorKind::InsufficientSample: return "insufficient-sample";
    case ErrorKind::PerfectFit: return "perfect-fit";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& stage, const std::string& detail) {
  std::string out;
  if (!stage.empty()) out += stage + ": ";
  out += std::string(to_string(kind)) + ": " + detail;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string stage)
    : std::runtime_error(compose(kind, stage, message)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::with_stage(std::string_view stage) const {
  std::string tag(stage);
  if (!stage_.empty()) tag += "/" + stage_;
  return Error(kind_, detail_, std::move(tag));
}

}  // namespace fqreg
