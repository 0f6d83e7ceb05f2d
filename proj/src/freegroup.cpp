#include "cocyclelab/freegroup.hpp"

#include <algorithm>
#include <cctype>

#include "cocyclelab/errors.hpp"

namespace cocyclelab {

namespace {

void check_letter(int rank, const Letter& l) {
  if (l.gen < 1 || l.gen > rank)
    throw PreconditionError("letter generator " + std::to_string(l.gen) +
                            " out of range for rank " + std::to_string(rank));
  if (l.exp != 1 && l.exp != -1)
    throw PreconditionError("letter exponent must be +1 or -1");
}

// Letter names per rank. Rank 2 keeps the s, t convention.
char letter_name(int rank, int gen) {
  if (rank == 2) return gen == 1 ? 's' : 't';
  return static_cast<char>('a' + gen - 1);
}

int letter_index(int rank, char lower) {
  if (rank == 2) {
    if (lower == 's' || lower == 'a') return 1;
    if (lower == 't' || lower == 'b') return 2;
    return 0;
  }
  int gen = lower - 'a' + 1;
  return (gen >= 1 && gen <= rank) ? gen : 0;
}

}  // namespace

ReducedWord::ReducedWord(int rank, std::vector<Letter> letters) : rank_(rank) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
  letters_.reserve(letters.size());
  for (const Letter& l : letters) {
    check_letter(rank, l);
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

ReducedWord ReducedWord::generator(int rank, int gen, int exp) {
  return ReducedWord(rank, {Letter{gen, exp}});
}

ReducedWord ReducedWord::parse(int rank, std::string_view text) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
  if (text == "e" || text.empty()) return ReducedWord(rank);
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    bool upper = std::isupper(static_cast<unsigned char>(c)) != 0;
    char lower = upper ? static_cast<char>(std::tolower(static_cast<unsigned char>(c))) : c;
    int gen = std::islower(static_cast<unsigned char>(lower)) ? letter_index(rank, lower) : 0;
    if (gen == 0)
      throw PreconditionError(std::string("cannot parse letter '") + c + "' for rank " +
                              std::to_string(rank));
    letters.push_back(Letter{gen, upper ? -1 : 1});
  }
  return ReducedWord(rank, std::move(letters));
}

std::string ReducedWord::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  out.reserve(letters_.size());
  for (const Letter& l : letters_) {
    char name = letter_name(rank_, l.gen);
    out.push_back(l.exp > 0 ? name : static_cast<char>(std::toupper(name)));
  }
  return out;
}

ReducedWord ReducedWord::operator*(const ReducedWord& rhs) const {
  if (rank_ != rhs.rank_)
    throw PreconditionError("rank mismatch in word multiplication");
  ReducedWord out(rank_);
  out.letters_ = letters_;
  for (const Letter& l : rhs.letters_) {
    if (!out.letters_.empty() && out.letters_.back().gen == l.gen &&
        out.letters_.back().exp == -l.exp)
      out.letters_.pop_back();
    else
      out.letters_.push_back(l);
  }
  return out;
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord out(rank_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back(Letter{it->gen, -it->exp});
  return out;
}

std::strong_ordering ReducedWord::operator<=>(const ReducedWord& rhs) const {
  if (auto c = letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (auto c = letters_[i].key() <=> rhs.letters_[i].key(); c != 0) return c;
  return std::strong_ordering::equal;
}

ReducedWord pow(const ReducedWord& w, long n) {
  ReducedWord base = n < 0 ? w.inverse() : w;
  long m = n < 0 ? -n : n;
  ReducedWord out = ReducedWord::identity(w.rank());
  for (long i = 0; i < m; ++i) out = out * base;
  return out;
}

std::size_t WordHash::operator()(const ReducedWord& w) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Letter& l : w.letters()) {
    h ^= static_cast<std::uint64_t>(l.key()) + 1;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t Ball::cardinality(int rank, int radius) {
  // 1 + 2k + 2k(2k-1) + ... accumulated with saturation.
  std::uint64_t total = 1, sphere = 2 * static_cast<std::uint64_t>(rank);
  const std::uint64_t kSat = UINT64_MAX / 4;
  for (int r = 1; r <= radius; ++r) {
    total += sphere;
    if (total > kSat || sphere > kSat / (2 * rank)) return kSat;
    sphere *= 2 * static_cast<std::uint64_t>(rank) - 1;
  }
  return total;
}

Ball Ball::enumerate(int rank, int radius, std::size_t cap) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
  if (radius < 0) throw PreconditionError("radius must be >= 0");
  std::uint64_t card = cardinality(rank, radius);
  if (card > cap)
    throw PreconditionError("ball B(" + std::to_string(rank) + ", " + std::to_string(radius) +
                            ") has " + std::to_string(card) + " elements, cap is " +
                            std::to_string(cap));

  std::vector<Letter> alphabet;
  for (int g = 1; g <= rank; ++g) {
    alphabet.push_back(Letter{g, 1});
    alphabet.push_back(Letter{g, -1});
  }

  Ball ball(rank, radius);
  ball.elements_.reserve(card);
  ball.elements_.push_back(ReducedWord::identity(rank));
  std::size_t level_begin = 0, level_end = 1;
  for (int r = 1; r <= radius; ++r) {
    for (std::size_t i = level_begin; i < level_end; ++i) {
      // copy: elements_ may reallocate while we extend
      const ReducedWord w = ball.elements_[i];
      const auto& ls = w.letters();
      for (const Letter& l : alphabet) {
        if (!ls.empty() && ls.back().gen == l.gen && ls.back().exp == -l.exp) continue;
        ball.elements_.push_back(w * ReducedWord::generator(rank, l.gen, l.exp));
      }
    }
    level_begin = level_end;
    level_end = ball.elements_.size();
  }
  ball.index_.reserve(ball.elements_.size());
  for (std::size_t i = 0; i < ball.elements_.size(); ++i) ball.index_.emplace(ball.elements_[i], i);
  return ball;
}

std::optional<std::size_t> Ball::index_of(const ReducedWord& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace cocyclelab
