#pragma once

// Words over a finite alphabet {0, ..., m-1}, periodic and eventually
// periodic symbol sequences, and lexicographic enumeration.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace holderspec {

using Symbol = std::uint8_t;

inline constexpr std::size_t kMaxAlphabet = 64;
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols);
  Word(std::initializer_list<int> symbols);

  // Parses a digit string such as "0110". Only alphabets up to 10 letters
  // can be written this way.
  static Word parse(std::string_view digits);
  // Word made of `count` copies of `s`.
  static Word constant(Symbol s, std::size_t count);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  void push_back(Symbol s);
  Word prefix(std::size_t n) const;
  Word suffix_from(std::size_t start) const;
  Word repeated(std::size_t times) const;
  Word& operator+=(const Word& other);

  // Largest symbol + 1, or 0 for the empty word.
  std::size_t min_alphabet() const;
  bool valid_for(std::size_t alphabet) const;
  // Number of distinct letters.
  std::size_t distinct_letters() const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

Word operator+(Word lhs, const Word& rhs);

// Lexicographic comparison of equal-length words; throws DomainError when
// the lengths differ.
std::strong_ordering lex_compare(const Word& u, const Word& v);

// Base-m integer with w[0] most significant. Lexicographic order of
// equal-length words matches numeric order of their indices.
std::uint64_t word_index(const Word& w, std::size_t alphabet);
Word word_from_index(std::uint64_t index, std::size_t alphabet,
                     std::size_t length);

// m^n, or CapacityError when it exceeds `cap`.
std::uint64_t checked_word_count(std::size_t alphabet, std::size_t length,
                                 std::uint64_t cap = kDefaultEnumerationCap);

// Yields all m^n words of length n in lexicographic order.
class WordEnumerator {
 public:
  WordEnumerator(std::size_t alphabet, std::size_t length,
                 std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t count() const { return count_; }
  // Writes the next word into `out`; false once exhausted.
  bool next(Word& out);

 private:
  std::size_t alphabet_;
  std::size_t length_;
  std::uint64_t count_;
  std::uint64_t emitted_ = 0;
  std::vector<Symbol> current_;
};

// Convenience wrapper: calls fn(word) for every word of the given length.
void for_each_word(std::size_t alphabet, std::size_t length,
                   const std::function<void(const Word&)>& fn,
                   std::uint64_t cap = kDefaultEnumerationCap);

// The infinite sequence obtained by repeating a nonempty period block.
class PeriodicWord {
 public:
  explicit PeriodicWord(Word period);
  PeriodicWord(std::initializer_list<int> period) : PeriodicWord(Word(period)) {}

  const Word& period() const { return period_; }
  std::size_t period_length() const { return period_.size(); }
  Symbol at(std::size_t i) const { return period_[i % period_.size()]; }
  // sigma^k applied to the sequence, as a cyclic rotation of the block.
  PeriodicWord rotated(std::size_t k) const;
  // First n symbols of the infinite sequence.
  Word prefix(std::size_t n) const;

  friend bool operator==(const PeriodicWord&, const PeriodicWord&) = default;

 private:
  Word period_;
};

// Eventually periodic sequence: a finite head followed by a periodic tail.
// This is the representation used wherever a point of the symbol space has
// to be handled exactly (continuations, coded points, separation cases).
class Sequence {
 public:
  explicit Sequence(PeriodicWord tail);
  Sequence(Word head, PeriodicWord tail);

  const Word& head() const { return head_; }
  const PeriodicWord& tail() const { return tail_; }

  Symbol at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  // sigma^n.
  Sequence shifted(std::size_t n) const;
  // True when the tail is a single repeated letter `s` starting no later
  // than position `from`.
  bool ends_in_constant(Symbol s, std::size_t from) const;
  std::size_t min_alphabet() const;

  std::string str() const;

 private:
  Word head_;
  PeriodicWord tail_;
};

}  // namespace holderspec
