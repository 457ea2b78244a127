// Shared primitives: truncation levels with infinity, diagnostic reports,
// and the small parse-error type used by every front end.
#ifndef FOLISO_BASICS_HPP
#define FOLISO_BASICS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace foliso {

// An element of N ∪ {∞}. Subtraction saturates at 0 on naturals and is the
// identity on ∞; comparisons treat ∞ as the maximum.
struct HLevel {
  static constexpr std::uint32_t kInf = UINT32_MAX;
  std::uint32_t value = kInf;

  static HLevel inf() { return HLevel{kInf}; }
  static HLevel fin(std::uint32_t n) { return HLevel{n}; }

  bool is_inf() const { return value == kInf; }
  HLevel minus(std::uint32_t m) const {
    if (is_inf()) return *this;
    return fin(value >= m ? value - m : 0);
  }
  bool operator==(const HLevel& o) const { return value == o.value; }
  bool operator!=(const HLevel& o) const { return value != o.value; }
  bool operator<(const HLevel& o) const { return value < o.value; }
  bool operator<=(const HLevel& o) const { return value <= o.value; }
  bool operator>=(const HLevel& o) const { return value >= o.value; }

  std::string str() const { return is_inf() ? "inf" : std::to_string(value); }
};

// One finding of a checking pass. `code` is a stable machine-readable tag
// (e.g. a Def 3.2 clause id like "1a", or a rule name); `where` locates the
// finding (binding index, tree path, line:col); `message` is for humans.
struct Diag {
  std::string code;
  std::string where;
  std::string message;
};

struct Report {
  std::vector<Diag> diags;

  bool ok() const { return diags.empty(); }
  void add(std::string code, std::string where, std::string message) {
    diags.push_back({std::move(code), std::move(where), std::move(message)});
  }
  void merge(const Report& other) {
    diags.insert(diags.end(), other.diags.begin(), other.diags.end());
  }
  bool has_code(const std::string& code) const {
    for (const auto& d : diags)
      if (d.code == code) return true;
    return false;
  }
  std::string str() const {
    std::string out;
    for (const auto& d : diags) {
      out += "[" + d.code + "] " + (d.where.empty() ? "" : d.where + ": ") +
             d.message + "\n";
    }
    return out;
  }
};

// Thrown by the text front ends for malformed input.
struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(line_ ? std::to_string(line_) + ":" +
                                       std::to_string(col_) + ": " + msg
                                 : msg),
        line(line_),
        col(col_) {}
};

// Thrown when a signature presentation cannot be saturated into a valid
// inverse category (cycles, dom/cod-incompatible equations, ...).
struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace foliso

#endif  // FOLISO_BASICS_HPP
