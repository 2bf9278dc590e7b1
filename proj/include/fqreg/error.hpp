#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqreg {

enum class ErrorKind {
  InvalidArgument,
  GridMismatch,
  OutOfRange,
  SingularDesign,
  ComponentDegenerate,
  InsufficientSample,
  PerfectFit,
  NoConvergence,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `stage` names the pipeline step that
/// raised it (empty for errors thrown outside a pipeline).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Copy of this error tagged with `stage`; an existing tag is kept as the inner stage.
  Error with_stage(std::string_view stage) const;

 private:
  ErrorKind kind_;
  std::string stage_;
  std::string detail_;
};

}  // namespace fqreg
