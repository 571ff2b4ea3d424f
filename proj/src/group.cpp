#include "freeprod/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace freeprod {
namespace {

std::string default_name(int g) {
  if (g < 26) return std::string(1, static_cast<char>('a' + g));
  return "g" + std::to_string(g);
}

// Aliases x, y, z for the first three generators of small groups, so that
// words can be written in the usual x, y notation.
constexpr const char* kAliases[] = {"x", "y", "z"};

std::vector<int> free_reduce(const std::vector<int>& letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

long mod(long a, long q) {
  long r = a % q;
  return r < 0 ? r + q : r;
}

bool reduce_syllable(const Presentation& p, Syllable& s) {
  const Factor& f = p.factor(s.factor);
  if (f.cyclic()) {
    s.letters.clear();
    s.exponent = static_cast<int>(mod(s.exponent, f.n));
    return s.exponent != 0;
  }
  s.exponent = 0;
  s.letters = free_reduce(s.letters);
  return !s.letters.empty();
}

}  // namespace

Presentation::Presentation(std::vector<Factor> factors,
                           std::vector<std::string> names)
    : factors_(std::move(factors)) {
  if (factors_.empty()) throw ParseError("group needs at least one factor");
  int total = 0;
  for (const Factor& f : factors_) {
    if (f.cyclic() && f.n < 2)
      throw ParseError("cyclic factor order must be at least 2");
    if (!f.cyclic() && f.n < 1)
      throw ParseError("free factor rank must be at least 1");
    first_gen_.push_back(total);
    for (int j = 0; j < f.generators(); ++j)
      gen_factor_.push_back(static_cast<int>(first_gen_.size()) - 1);
    total += f.generators();
  }
  if (names.empty()) {
    for (int g = 0; g < total; ++g) names.push_back(default_name(g));
    aliases_ = total <= 3;
  }
  if (static_cast<int>(names.size()) != total)
    throw ParseError("wrong number of generator names");
  std::set<std::string> seen(names.begin(), names.end());
  if (static_cast<int>(seen.size()) != total)
    throw ParseError("generator names must be distinct");
  names_ = std::move(names);
}

Presentation Presentation::parse(std::string_view text) {
  std::vector<Factor> factors;
  std::vector<std::string> names;
  bool any_named = false;
  std::vector<std::vector<std::string>> per_factor;
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  for (;;) {
    skip();
    if (i >= text.size()) throw ParseError("expected a factor in group spec");
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (c != 'C' && c != 'F')
      throw ParseError("unknown factor type in group spec: " + std::string(text));
    ++i;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw ParseError("missing factor size in group spec");
    int n = std::stoi(std::string(text.substr(start, i - start)));
    Factor f{c == 'C' ? Factor::Kind::Cyclic : Factor::Kind::Free, n};
    if (f.cyclic() && n < 2)
      throw ParseError("cyclic factors must have order at least 2");
    if (!f.cyclic() && n < 1)
      throw ParseError("free factors must have rank at least 1");
    std::vector<std::string> fn;
    skip();
    if (i < text.size() && text[i] == '<') {
      any_named = true;
      ++i;
      std::string cur;
      for (;; ++i) {
        if (i >= text.size()) throw ParseError("unterminated name list");
        char ch = text[i];
        if (ch == ',' || ch == '>') {
          if (cur.empty()) throw ParseError("empty generator name");
          fn.push_back(cur);
          cur.clear();
          if (ch == '>') {
            ++i;
            break;
          }
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
          cur += ch;
        }
      }
      if (static_cast<int>(fn.size()) != f.generators())
        throw ParseError("factor names do not match its generator count");
    }
    factors.push_back(f);
    per_factor.push_back(fn);
    skip();
    if (i >= text.size()) break;
    if (text[i] != '*') throw ParseError("expected '*' in group spec");
    ++i;
  }
  if (any_named) {
    int g = 0;
    for (size_t k = 0; k < factors.size(); ++k) {
      for (int j = 0; j < factors[k].generators(); ++j, ++g)
        names.push_back(per_factor[k].empty() ? default_name(g) : per_factor[k][j]);
    }
  }
  return Presentation(std::move(factors), std::move(names));
}

std::optional<int> Presentation::lookup(std::string_view name) const {
  for (int g = 0; g < generator_count(); ++g)
    if (names_[g] == name) return g;
  if (aliases_) {
    for (int g = 0; g < generator_count(); ++g)
      if (name == kAliases[g]) return g;
  }
  return std::nullopt;
}

long Presentation::m() const {
  long m = 1;
  for (const Factor& f : factors_)
    if (f.cyclic()) m = std::lcm(m, static_cast<long>(f.n));
  return m;
}

std::string Presentation::to_string() const {
  bool defaults = true;
  for (int g = 0; g < generator_count(); ++g)
    if (names_[g] != default_name(g)) defaults = false;
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i) out += '*';
    out += factors_[i].cyclic() ? 'C' : 'F';
    out += std::to_string(factors_[i].n);
    if (!defaults) {
      out += '<';
      for (int j = 0; j < factors_[i].generators(); ++j) {
        if (j) out += ',';
        out += names_[first_gen_[i] + j];
      }
      out += '>';
    }
  }
  return out;
}

Word normalize(const Presentation& p, const std::vector<Syllable>& raw) {
  Word w;
  for (Syllable s : raw) {
    if (!reduce_syllable(p, s)) continue;
    while (!w.syl.empty() && w.syl.back().factor == s.factor) {
      Syllable merged = w.syl.back();
      w.syl.pop_back();
      merged.exponent += s.exponent;
      merged.letters.insert(merged.letters.end(), s.letters.begin(), s.letters.end());
      if (!reduce_syllable(p, merged)) {
        s.factor = -1;
        break;
      }
      s = std::move(merged);
    }
    if (s.factor >= 0) w.syl.push_back(std::move(s));
  }
  return w;
}

Word generator_word(const Presentation& p, int g, long exponent) {
  int i = p.gen_factor(g);
  Syllable s;
  s.factor = i;
  if (p.factor(i).cyclic()) {
    s.exponent = static_cast<int>(mod(exponent, p.factor(i).n));
  } else {
    int letter = g - p.first_generator(i) + 1;
    long count = exponent < 0 ? -exponent : exponent;
    s.letters.assign(static_cast<size_t>(count), exponent < 0 ? -letter : letter);
  }
  return normalize(p, {s});
}

Word multiply(const Presentation& p, const Word& a, const Word& b) {
  std::vector<Syllable> raw = a.syl;
  raw.insert(raw.end(), b.syl.begin(), b.syl.end());
  return normalize(p, raw);
}

Word inverse(const Presentation& p, const Word& w) {
  Word r;
  for (auto it = w.syl.rbegin(); it != w.syl.rend(); ++it) {
    Syllable s = *it;
    if (p.factor(s.factor).cyclic()) {
      s.exponent = static_cast<int>(mod(-s.exponent, p.factor(s.factor).n));
    } else {
      std::reverse(s.letters.begin(), s.letters.end());
      for (int& l : s.letters) l = -l;
    }
    r.syl.push_back(std::move(s));
  }
  return r;
}

Word power(const Presentation& p, const Word& w, long k) {
  Word base = k < 0 ? inverse(p, w) : w;
  if (k < 0) k = -k;
  std::vector<Syllable> raw;
  for (long i = 0; i < k; ++i) raw.insert(raw.end(), base.syl.begin(), base.syl.end());
  return normalize(p, raw);
}

Word conjugate(const Presentation& p, const Word& c, const Word& w) {
  return multiply(p, multiply(p, c, w), inverse(p, c));
}

std::pair<Word, Word> cyclic_reduce(const Presentation& p, const Word& w) {
  Word cur = w;
  Word conj;
  for (;;) {
    if (cur.length() >= 2 && cur.syl.front().factor == cur.syl.back().factor) {
      Word s;
      s.syl.push_back(cur.syl.back());
      cur = conjugate(p, s, cur);
      conj = multiply(p, conj, inverse(p, s));
      continue;
    }
    if (cur.length() == 1 && !p.factor(cur.syl[0].factor).cyclic()) {
      const std::vector<int>& l = cur.syl[0].letters;
      if (l.size() >= 2 && l.front() == -l.back()) {
        Syllable first{cur.syl[0].factor, 0, {l.front()}};
        Word s;
        s.syl.push_back(first);
        conj = multiply(p, conj, s);
        cur = conjugate(p, inverse(p, s), cur);
        continue;
      }
    }
    break;
  }
  return {cur, conj};
}

namespace {

template <class Seq>
size_t smallest_period(const Seq& s) {
  size_t n = s.size();
  for (size_t per = 1; per < n; ++per) {
    if (n % per) continue;
    bool ok = true;
    for (size_t i = per; i < n && ok; ++i) ok = s[i] == s[i - per];
    if (ok) return per;
  }
  return n;
}

}  // namespace

ElementClass classify(const Presentation& p, const Word& w) {
  ElementClass ec;
  Word r = cyclic_reduce(p, w).first;
  if (r.empty()) return ec;
  if (r.length() == 1 && p.factor(r.syl[0].factor).cyclic()) {
    ec.kind = ElementClass::Kind::Torsion;
    ec.factor = r.syl[0].factor;
    ec.exponent = r.syl[0].exponent;
    return ec;
  }
  ec.kind = ElementClass::Kind::Infinite;
  if (r.length() == 1) {
    const std::vector<int>& l = r.syl[0].letters;
    size_t per = smallest_period(l);
    Syllable s{r.syl[0].factor, 0, std::vector<int>(l.begin(), l.begin() + per)};
    ec.root.syl.push_back(s);
    ec.power = static_cast<long>(l.size() / per);
  } else {
    size_t per = smallest_period(r.syl);
    ec.root.syl.assign(r.syl.begin(), r.syl.begin() + per);
    ec.power = static_cast<long>(r.length() / per);
  }
  return ec;
}

long m_of(const Presentation& p) { return p.m(); }

long element_order(const Presentation& p, const Word& w) {
  ElementClass ec = classify(p, w);
  switch (ec.kind) {
    case ElementClass::Kind::Trivial:
      return 1;
    case ElementClass::Kind::Torsion: {
      long q = p.factor(ec.factor).n;
      return q / std::gcd(q, static_cast<long>(ec.exponent));
    }
    default:
      return 0;
  }
}

std::string to_string(const Presentation& p, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  auto emit = [&](int g, long e) {
    if (!out.empty()) out += '*';
    out += p.name(g);
    if (e != 1) out += "^" + std::to_string(e);
  };
  for (const Syllable& s : w.syl) {
    const Factor& f = p.factor(s.factor);
    int g0 = p.first_generator(s.factor);
    if (f.cyclic()) {
      long e = s.exponent;
      if (2 * e > f.n) e -= f.n;
      emit(g0, e);
      continue;
    }
    for (size_t i = 0; i < s.letters.size();) {
      size_t j = i;
      while (j < s.letters.size() && s.letters[j] == s.letters[i]) ++j;
      int l = s.letters[i];
      long run = static_cast<long>(j - i);
      emit(g0 + (l > 0 ? l : -l) - 1, l > 0 ? run : -run);
      i = j;
    }
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const Presentation& p) : t_(text), p_(p) {}

  Word run() {
    Word w = expr();
    skip();
    if (i_ != t_.size()) fail("unexpected character");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(i_) + " in '" +
                     std::string(t_) + "'");
  }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  bool at_term_start() {
    skip();
    if (i_ >= t_.size()) return false;
    char c = t_[i_];
    return c == '(' || c == '[' || c == '1' || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '_';
  }

  Word expr() {
    Word w;
    bool first = true;
    for (;;) {
      skip();
      if (!first && i_ < t_.size() && t_[i_] == '*') {
        ++i_;
        if (!at_term_start()) fail("expected a factor after '*'");
      } else if (!at_term_start()) {
        if (first) fail("expected a word");
        break;
      }
      w = multiply(p_, w, term());
      first = false;
    }
    return w;
  }

  Word term() {
    Word a = atom();
    skip();
    while (i_ < t_.size() && t_[i_] == '^') {
      ++i_;
      skip();
      size_t start = i_;
      if (i_ < t_.size() && (t_[i_] == '-' || t_[i_] == '+')) ++i_;
      size_t digits = i_;
      while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) ++i_;
      if (digits == i_) fail("malformed exponent");
      long e;
      try {
        e = std::stol(std::string(t_.substr(start, i_ - start)));
      } catch (const std::exception&) {
        fail("exponent out of range");
      }
      a = power(p_, a, e);
      skip();
    }
    return a;
  }

  Word atom() {
    skip();
    char c = t_[i_];
    if (c == '(') {
      ++i_;
      Word w = expr();
      skip();
      if (i_ >= t_.size() || t_[i_] != ')') fail("missing ')'");
      ++i_;
      return w;
    }
    if (c == '[') {
      ++i_;
      Word u = expr();
      skip();
      if (i_ >= t_.size() || t_[i_] != ',') fail("missing ',' in commutator");
      ++i_;
      Word v = expr();
      skip();
      if (i_ >= t_.size() || t_[i_] != ']') fail("missing ']'");
      ++i_;
      Word uv = multiply(p_, u, v);
      return multiply(p_, uv, inverse(p_, multiply(p_, v, u)));
    }
    if (c == '1') {
      ++i_;
      return {};
    }
    size_t start = i_;
    while (i_ < t_.size() &&
           (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '_'))
      ++i_;
    std::string_view id = t_.substr(start, i_ - start);
    if (auto g = p_.lookup(id)) return generator_word(p_, *g);
    // Juxtaposed single-letter names such as "abab".
    Word w;
    for (char ch : id) {
      auto g = p_.lookup(std::string_view(&ch, 1));
      if (!g) {
        i_ = start;
        fail("unknown generator '" + std::string(id) + "'");
      }
      w = multiply(p_, w, generator_word(p_, *g));
    }
    return w;
  }

  std::string_view t_;
  const Presentation& p_;
  size_t i_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const Presentation& p) {
  return WordParser(text, p).run();
}

}  // namespace freeprod
