#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cocyclelab {

// One letter of a word: generator index (1-based) and exponent +1 or -1.
struct Letter {
  int gen;
  int exp;

  friend bool operator==(const Letter&, const Letter&) = default;

  // Enumeration order: s < s^-1 < t < t^-1 < ...
  int key() const { return 2 * (gen - 1) + (exp < 0 ? 1 : 0); }
};

// Freely reduced word in F_k. Reduction happens eagerly on construction, so
// every value of this type is already in normal form. Words carry their rank;
// mixing ranks in arithmetic is an error.
//
// Serialization: generator i is written with its letter name (lowercase),
// inverse letters are uppercase, the empty word is "e". Rank 2 uses the
// names s, t (with a, b accepted as parse aliases); other ranks use a, b, c...
// Example over F_2: "stS" is s t s^-1.
class ReducedWord {
 public:
  explicit ReducedWord(int rank) : rank_(rank) {}
  ReducedWord(int rank, std::vector<Letter> letters);

  static ReducedWord identity(int rank) { return ReducedWord(rank); }
  static ReducedWord generator(int rank, int gen, int exp = 1);
  static ReducedWord parse(int rank, std::string_view text);

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  std::string str() const;

  ReducedWord operator*(const ReducedWord& rhs) const;
  ReducedWord inverse() const;

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

  // Shortlex: by length, then by letter keys. Gives every container a
  // deterministic iteration order.
  std::strong_ordering operator<=>(const ReducedWord& rhs) const;

 private:
  int rank_;
  std::vector<Letter> letters_;
};

ReducedWord pow(const ReducedWord& w, long n);

struct WordHash {
  std::size_t operator()(const ReducedWord& w) const;
};

// Metric ball B_R in F_k, enumerated breadth-first by length and
// lexicographically within each length. Element 0 is the identity.
class Ball {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  static Ball enumerate(int rank, int radius, std::size_t cap = kDefaultCap);

  // |B(k, R)| in closed form; saturates instead of overflowing.
  static std::uint64_t cardinality(int rank, int radius);

  int rank() const { return rank_; }
  int radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  // Reference-returning accessors are banned on temporaries: a range-for over
  // enumerate(...).elements() would iterate a destroyed vector.
  const ReducedWord& word(std::size_t i) const& { return elements_[i]; }
  const ReducedWord& word(std::size_t i) && = delete;
  const std::vector<ReducedWord>& elements() const& { return elements_; }
  const std::vector<ReducedWord>& elements() && = delete;

  std::optional<std::size_t> index_of(const ReducedWord& w) const;

 private:
  Ball(int rank, int radius) : rank_(rank), radius_(radius) {}

  int rank_;
  int radius_;
  std::vector<ReducedWord> elements_;
  std::unordered_map<ReducedWord, std::size_t, WordHash> index_;
};

}  // namespace cocyclelab
