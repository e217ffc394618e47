#include "eqgeo/word.hpp"

#include "eqgeo/errors.hpp"

namespace eqgeo {

namespace {

// Pushes one letter onto a reduced stack, keeping it reduced.
void push_reduced(std::vector<Letter>& stack, const GroupBackend& g, const Letter& l) {
  if (l.is_variable()) {
    if (!stack.empty() && stack.back().var == l.var && stack.back().exp == -l.exp) {
      stack.pop_back();
      return;
    }
    stack.push_back(l);
    return;
  }
  if (g.is_identity(l.coef)) return;
  if (!stack.empty() && !stack.back().is_variable()) {
    Element merged = g.op(stack.back().coef, l.coef);
    stack.pop_back();
    if (!g.is_identity(merged)) stack.push_back(Letter::coefficient(std::move(merged)));
    return;
  }
  stack.push_back(l);
}

}  // namespace

Word Word::normalize(GroupPtr group, std::size_t arity, std::span<const Letter> raw) {
  Word w(std::move(group), arity);
  w.letters_.reserve(raw.size());
  for (const auto& l : raw) {
    if (l.is_variable()) {
      if (l.var > arity) throw ArityError("variable x" + std::to_string(l.var) + " exceeds arity " + std::to_string(arity));
      if (l.exp != 1 && l.exp != -1) throw ValidationError("letter exponent must be +1 or -1");
    }
    push_reduced(w.letters_, *w.group_, l);
  }
  return w;
}

Word Word::variable(GroupPtr group, std::size_t arity, std::uint32_t index, int exponent) {
  Letter l = Letter::variable(index, exponent);
  return normalize(std::move(group), arity, std::span<const Letter>(&l, 1));
}

Word Word::coefficient(GroupPtr group, std::size_t arity, const Element& g) {
  Letter l = Letter::coefficient(g);
  return normalize(std::move(group), arity, std::span<const Letter>(&l, 1));
}

Word Word::operator*(const Word& other) const {
  if (arity_ != other.arity_) throw ArityError("cannot multiply words of arity " + std::to_string(arity_) + " and " +
                                               std::to_string(other.arity_));
  Word out = *this;
  for (const auto& l : other.letters_) push_reduced(out.letters_, *group_, l);
  return out;
}

Word Word::inverse() const {
  Word out(group_, arity_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    if (it->is_variable())
      out.letters_.push_back(Letter::variable(it->var, -it->exp));
    else
      out.letters_.push_back(Letter::coefficient(group_->inv(it->coef)));
  }
  return out;
}

Word Word::pow(std::int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  std::uint64_t e = k < 0 ? std::uint64_t(-(k + 1)) + 1 : std::uint64_t(k);
  Word result(group_, arity_);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Word map_word(const Word& w, GroupPtr target, std::size_t target_arity,
              const std::function<Word(std::uint32_t)>& var_image,
              const std::function<Word(const Element&)>& coef_image) {
  std::vector<Letter> raw;
  raw.reserve(w.size());
  std::vector<std::optional<Word>> cache(2 * (w.arity() + 1));
  auto append = [&](const Word& img) {
    if (img.arity() != target_arity) throw ArityError("image word has the wrong arity");
    raw.insert(raw.end(), img.letters().begin(), img.letters().end());
  };
  for (const auto& l : w.letters()) {
    if (l.is_variable()) {
      auto& slot = cache[2 * l.var + (l.exp > 0 ? 0 : 1)];
      if (!slot) slot = l.exp > 0 ? var_image(l.var) : var_image(l.var).inverse();
      append(*slot);
    } else {
      append(coef_image(l.coef));
    }
  }
  return Word::normalize(std::move(target), target_arity, raw);
}

Word substitute(const Word& w, const std::vector<std::optional<Word>>& sigma) {
  std::optional<std::size_t> arity;
  for (const auto& s : sigma) {
    if (!s) continue;
    if (arity && *arity != s->arity()) throw ArityError("substitution images have different arities");
    arity = s->arity();
  }
  std::size_t target_arity = arity.value_or(w.arity());
  auto var_image = [&](std::uint32_t i) -> Word {
    if (i > sigma.size() || !sigma[i - 1]) throw ValidationError("no substitution given for x" + std::to_string(i));
    return *sigma[i - 1];
  };
  auto coef_image = [&](const Element& g) { return Word::coefficient(w.group_ptr(), target_arity, g); };
  return map_word(w, w.group_ptr(), target_arity, var_image, coef_image);
}

Word substitute(const Word& w, const std::vector<Word>& sigma) {
  return substitute(w, std::vector<std::optional<Word>>(sigma.begin(), sigma.end()));
}

Element evaluate(const Word& w, std::span<const Element> v, const GroupBackend& target, const Embedding& iota) {
  if (v.size() != w.arity())
    throw ArityError("tuple of length " + std::to_string(v.size()) + " for a word of arity " + std::to_string(w.arity()));
  std::vector<std::optional<Element>> inverses(v.size());
  Element acc = target.identity();
  for (const auto& l : w.letters()) {
    if (l.is_variable()) {
      const auto i = l.var - 1;
      if (l.exp > 0) {
        acc = target.op(acc, v[i]);
      } else {
        if (!inverses[i]) inverses[i] = target.inv(v[i]);
        acc = target.op(acc, *inverses[i]);
      }
    } else {
      acc = target.op(acc, iota ? iota(l.coef) : l.coef);
    }
  }
  return acc;
}

Element evaluate(const Word& w, std::span<const Element> v) { return evaluate(w, v, w.group()); }

std::vector<std::int64_t> exponent_sums(const Word& w) {
  std::vector<std::int64_t> out(w.arity(), 0);
  for (const auto& l : w.letters())
    if (l.is_variable()) out[l.var - 1] += l.exp;
  return out;
}

}  // namespace eqgeo
