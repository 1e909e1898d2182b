#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace drrpvt {

// Domain error carrying a machine-readable code plus key/value context,
// so the CLI can emit structured error JSON instead of a bare message.
class Error : public std::runtime_error {
 public:
  using Context = std::vector<std::pair<std::string, std::string>>;

  Error(std::string code, const std::string& message, Context context = {})
      : std::runtime_error(message),
        code_(std::move(code)),
        context_(std::move(context)) {}

  const std::string& code() const { return code_; }
  const Context& context() const { return context_; }

 private:
  std::string code_;
  Context context_;
};

}  // namespace drrpvt
