#pragma once

#include <stdexcept>
#include <string>

namespace theta {

// Error taxonomy shared by all modules. The CLI maps kinds onto exit codes:
// input-class kinds exit 2, computed findings (hypothesis/invariant) exit 1.
class Error : public std::runtime_error {
public:
  enum class Kind {
    input,         // malformed data, bad parameters, unknown labels
    domain,        // arguments outside an operation's domain (e.g. s > r)
    image,         // requested value not in Im(theta)
    strict_range,  // no root in [0, r] for eta in strict mode
    no_root,       // bracket expansion exhausted without a sign change
    hypothesis,    // a stated hypothesis fails on the given data; witness in message
    invariant      // a consequence that should be a theorem failed; inputs inconsistent
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::input: return "input";
      case Kind::domain: return "domain";
      case Kind::image: return "image";
      case Kind::strict_range: return "strict_range";
      case Kind::no_root: return "no_root";
      case Kind::hypothesis: return "hypothesis";
      case Kind::invariant: return "invariant";
    }
    return "unknown";
  }

private:
  Kind kind_;
};

[[noreturn]] inline void raise(Error::Kind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace theta
