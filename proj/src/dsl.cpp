#include "eqgeo/dsl.hpp"

#include <cctype>

#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace {

struct Atom {
  bool is_coefficient = false;
  std::uint32_t var = 0;
  Element coef;
  BigInt exponent = 1;
  std::size_t position = 0;
};

// Recursive-descent scanner shared by parse_word and parse_linear.
class Scanner {
 public:
  Scanner(std::string_view text, const GroupBackend& g, std::size_t arity, VarNaming naming)
      : text_(text), g_(g), arity_(arity), naming_(naming) {}

  // Returns false at end of input.
  bool next(Atom& atom) {
    skip_separators();
    if (pos_ >= text_.size()) return false;
    atom = Atom{};
    atom.position = pos_;
    if (text_[pos_] == '1' && (pos_ + 1 == text_.size() || is_boundary(text_[pos_ + 1]))) {
      ++pos_;
      atom.is_coefficient = true;
      atom.coef = g_.identity();
    } else if (text_.substr(pos_, 2) == "g:") {
      pos_ += 2;
      auto start = pos_;
      int depth = 0;
      while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (depth == 0 && (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^')) break;
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        ++pos_;
      }
      if (pos_ == start) throw ParseError("empty coefficient name", start);
      atom.is_coefficient = true;
      try {
        atom.coef = g_.parse_element(text_.substr(start, pos_ - start));
      } catch (const ParseError&) {
        throw;
      } catch (const ValidationError& e) {
        throw ParseError(std::string("unknown coefficient: ") + e.what(), start);
      }
    } else {
      atom.var = parse_variable();
    }
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      atom.exponent = parse_integer();
    }
    return true;
  }

 private:
  static bool is_boundary(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '^'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  // Whitespace, or a single '*' between two terms.
  void skip_separators() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '*') {
      if (!seen_term_) throw ParseError("'*' before the first term", pos_);
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] == '*') throw ParseError("'*' must be followed by a term", pos_);
    }
    seen_term_ = true;
  }

  std::size_t parse_index() {
    auto start = pos_;
    std::size_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (v > 1'000'000'000) throw ParseError("index too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected an index", start);
    return v;
  }

  BigInt parse_integer() {
    auto start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    auto digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("expected an integer exponent", start);
    return parse_bigint(text_.substr(start, pos_ - start));
  }

  std::uint32_t checked_var(std::size_t v, std::size_t at) const {
    if (v < 1 || v > arity_)
      throw ParseError("variable index " + std::to_string(v) + " outside 1.." + std::to_string(arity_), at);
    return static_cast<std::uint32_t>(v);
  }

  std::uint32_t parse_variable() {
    auto start = pos_;
    char c = text_[pos_];
    if (naming_.style == VarStyle::TX && c == 't' && (pos_ + 1 == text_.size() || is_boundary(text_[pos_ + 1]))) {
      ++pos_;
      return checked_var(1, start);
    }
    if (c == 'x' && naming_.style != VarStyle::Y) {
      ++pos_;
      auto i = parse_index();
      return checked_var(naming_.style == VarStyle::TX ? i + 1 : i, start);
    }
    if (c == 'y' && naming_.style == VarStyle::Y && text_.substr(pos_, 2) == "y:") {
      pos_ += 2;
      auto i = parse_index();
      if (pos_ >= text_.size() || text_[pos_] != ':') throw ParseError("expected ':' in y:i:j", pos_);
      ++pos_;
      auto j = parse_index();
      if (i < 1 || j < 1 || j > naming_.k) throw ParseError("y index out of range", start);
      return checked_var((i - 1) * naming_.k + j, start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }

  std::string_view text_;
  const GroupBackend& g_;
  std::size_t arity_;
  VarNaming naming_;
  std::size_t pos_ = 0;
  bool seen_term_ = false;
};

std::string variable_name(std::uint32_t var, VarNaming naming) {
  switch (naming.style) {
    case VarStyle::X:
      return "x" + std::to_string(var);
    case VarStyle::TX:
      return var == 1 ? "t" : "x" + std::to_string(var - 1);
    case VarStyle::Y: {
      auto i = (var - 1) / naming.k + 1;
      auto j = (var - 1) % naming.k + 1;
      return "y:" + std::to_string(i) + ":" + std::to_string(j);
    }
  }
  return {};
}

}  // namespace

Word parse_word(std::string_view text, GroupPtr group, std::size_t arity, VarNaming naming) {
  Scanner scan(text, *group, arity, naming);
  std::vector<Letter> raw;
  Atom atom;
  bool any = false;
  while (scan.next(atom)) {
    any = true;
    if (atom.is_coefficient) {
      raw.push_back(Letter::coefficient(group->power(atom.coef, atom.exponent)));
      continue;
    }
    BigInt count = atom.exponent < 0 ? BigInt(-atom.exponent) : atom.exponent;
    if (count + raw.size() > kMaxExpandedLetters) throw ParseError("exponent expands past the letter cap", atom.position);
    raw.insert(raw.end(), static_cast<std::size_t>(count), Letter::variable(atom.var, atom.exponent < 0 ? -1 : 1));
  }
  if (!any) throw ParseError("empty word text (use \"1\" for the empty word)", 0);
  return Word::normalize(std::move(group), arity, raw);
}

std::string print_word(const Word& w, VarNaming naming) {
  const auto& ls = w.letters();
  if (ls.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ls.size();) {
    if (!out.empty()) out += " * ";
    if (!ls[i].is_variable()) {
      out += "g:" + w.group().serialize(ls[i].coef);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < ls.size() && ls[j].var == ls[i].var && ls[j].exp == ls[i].exp) ++j;
    std::int64_t k = static_cast<std::int64_t>(j - i) * ls[i].exp;
    out += variable_name(ls[i].var, naming);
    if (k != 1) out += "^" + std::to_string(k);
    i = j;
  }
  return out;
}

LinearizedWord parse_linear(std::string_view text, const GroupBackend& g, std::size_t arity) {
  if (!g.is_abelian()) throw ValidationError("linearized words need an abelian group");
  Scanner scan(text, g, arity, {});
  LinearizedWord lw{std::vector<BigInt>(arity, 0), g.identity()};
  Atom atom;
  bool any = false;
  while (scan.next(atom)) {
    any = true;
    if (atom.is_coefficient)
      lw.c = g.op(lw.c, g.power(atom.coef, atom.exponent));
    else
      lw.alpha[atom.var - 1] += atom.exponent;
  }
  if (!any) throw ParseError("empty word text (use \"1\" for the empty word)", 0);
  return lw;
}

LinearizedWord linearize(const Word& w) {
  const auto& g = w.group();
  if (!g.is_abelian()) throw ValidationError("linearized words need an abelian group");
  LinearizedWord lw{std::vector<BigInt>(w.arity(), 0), g.identity()};
  for (const auto& l : w.letters()) {
    if (l.is_variable())
      lw.alpha[l.var - 1] += l.exp;
    else
      lw.c = g.op(lw.c, l.coef);
  }
  return lw;
}

std::string print_linear(const LinearizedWord& w, const GroupBackend& g) {
  std::string out;
  for (std::size_t i = 0; i < w.alpha.size(); ++i) {
    if (w.alpha[i] == 0) continue;
    if (!out.empty()) out += " * ";
    out += "x" + std::to_string(i + 1);
    if (w.alpha[i] != 1) out += "^" + to_string(w.alpha[i]);
  }
  if (!g.is_identity(w.c)) {
    if (!out.empty()) out += " * ";
    out += "g:" + g.serialize(w.c);
  }
  return out.empty() ? "1" : out;
}

Element evaluate_linear(const LinearizedWord& w, std::span<const Element> v, const GroupBackend& g) {
  if (v.size() != w.alpha.size()) throw ArityError("tuple length does not match the word's arity");
  Element acc = w.c;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (w.alpha[i] != 0) acc = g.op(acc, g.power(v[i], w.alpha[i]));
  return acc;
}

Word expand_linear(const LinearizedWord& w, GroupPtr g) {
  std::vector<Letter> raw;
  for (std::size_t i = 0; i < w.alpha.size(); ++i) {
    BigInt count = w.alpha[i] < 0 ? BigInt(-w.alpha[i]) : w.alpha[i];
    if (count + raw.size() > kMaxExpandedLetters) throw ValidationError("linearized word too long to expand");
    raw.insert(raw.end(), static_cast<std::size_t>(count),
               Letter::variable(static_cast<std::uint32_t>(i + 1), w.alpha[i] < 0 ? -1 : 1));
  }
  raw.push_back(Letter::coefficient(w.c));
  auto arity = w.alpha.size();
  return Word::normalize(std::move(g), arity, raw);
}

Tuple parse_tuple(const json& j, const GroupBackend& g, std::size_t arity) {
  auto one = [&](const json& e) { return g.parse_element(e.is_string() ? e.get<std::string>() : e.dump()); };
  Tuple t;
  if (j.is_array()) {
    for (const auto& e : j) t.push_back(one(e));
  } else {
    t.push_back(one(j));
  }
  if (t.size() != arity)
    throw ArityError("tuple " + j.dump() + " has length " + std::to_string(t.size()) + ", expected " +
                     std::to_string(arity));
  return t;
}

json tuple_to_json(const Tuple& t, const GroupBackend& g) {
  json j = json::array();
  for (const auto& e : t) j.push_back(g.serialize(e));
  return j;
}

Tuple parse_tuple_text(std::string_view text, const GroupBackend& g) {
  Tuple t;
  for (auto part : split_top_level(text)) {
    auto b = part.find_first_not_of(" \t");
    auto e = part.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("empty tuple entry in '" + std::string(text) + "'");
    t.push_back(g.parse_element(part.substr(b, e - b + 1)));
  }
  return t;
}

}  // namespace eqgeo
