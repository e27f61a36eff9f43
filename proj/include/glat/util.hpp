#ifndef GLAT_UTIL_HPP
#define GLAT_UTIL_HPP

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace glat {

enum class ErrorKind {
  input,     // malformed or invalid input data
  capacity,  // input exceeds a documented implementation bound
  refusal,   // precondition gate declined the request (e.g. not retract rational)
  internal,  // broken invariant; indicates a bug
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void check(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

// Internal-invariant assertion that survives NDEBUG builds.
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(ErrorKind::internal, "invariant violated: " + msg);
}

// Deterministic PRNG used by the randomized module-splitting steps.
// Fixed seed; results are canonicalized afterwards, so the stream only
// affects intermediate choices, never output.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

private:
  uint64_t state_;
};

template <typename T>
std::string join(const std::vector<T>& v, const std::string& sep) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

}  // namespace glat

#endif
