#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freeprod {

// Malformed group or word text. The CLI maps this to exit code 3.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Factor {
  enum class Kind { Cyclic, Free };
  Kind kind = Kind::Cyclic;
  int n = 2;  // order for cyclic factors, rank for free ones

  bool cyclic() const { return kind == Kind::Cyclic; }
  int generators() const { return cyclic() ? 1 : n; }
  bool operator==(const Factor&) const = default;
};

// A free product of finite cyclic and finitely generated free groups.
class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(std::vector<Factor> factors,
                        std::vector<std::string> names = {});

  // "C2*C3", "C2*C2*F1", optionally with names: "C2<x>*F2<s,t>".
  static Presentation parse(std::string_view text);

  int size() const { return static_cast<int>(factors_.size()); }
  const Factor& factor(int i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }

  int generator_count() const { return static_cast<int>(names_.size()); }
  int gen_factor(int g) const { return gen_factor_.at(g); }
  int first_generator(int i) const { return first_gen_.at(i); }
  const std::string& name(int g) const { return names_.at(g); }
  std::optional<int> lookup(std::string_view name) const;

  // lcm of the cyclic orders, 1 without cyclic factors.
  long m() const;
  std::string to_string() const;

  bool operator==(const Presentation& o) const {
    return factors_ == o.factors_ && names_ == o.names_;
  }

 private:
  std::vector<Factor> factors_;
  std::vector<std::string> names_;
  std::vector<int> gen_factor_;
  std::vector<int> first_gen_;
  bool aliases_ = false;
};

// One syllable of the normal form. Cyclic factors carry an exponent in
// 1..q-1; free factors carry a nonempty freely reduced word whose letters
// are signed local generator numbers (+(j+1) or -(j+1)).
struct Syllable {
  int factor = 0;
  int exponent = 0;
  std::vector<int> letters;

  auto operator<=>(const Syllable&) const = default;
};

struct Word {
  std::vector<Syllable> syl;

  size_t length() const { return syl.size(); }
  bool empty() const { return syl.empty(); }
  auto operator<=>(const Word&) const = default;
};

struct ElementClass {
  enum class Kind { Trivial, Torsion, Infinite };
  Kind kind = Kind::Trivial;
  int factor = -1;  // torsion
  int exponent = 0;
  Word root;        // infinite order: reduced word == root^power
  long power = 0;
};

Word normalize(const Presentation& p, const std::vector<Syllable>& raw);
Word generator_word(const Presentation& p, int g, long exponent = 1);
Word multiply(const Presentation& p, const Word& a, const Word& b);
Word inverse(const Presentation& p, const Word& w);
Word power(const Presentation& p, const Word& w, long k);
Word conjugate(const Presentation& p, const Word& c, const Word& w);  // c w c^-1

// Returns (w', c) with w = c w' c^-1 and w' cyclically reduced.
std::pair<Word, Word> cyclic_reduce(const Presentation& p, const Word& w);
ElementClass classify(const Presentation& p, const Word& w);
long m_of(const Presentation& p);

// Order of a torsion element (1 for the identity, 0 for infinite order).
long element_order(const Presentation& p, const Word& w);

Word parse_word(std::string_view text, const Presentation& p);
std::string to_string(const Presentation& p, const Word& w);

}  // namespace freeprod
