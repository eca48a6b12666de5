#include "holderspec/symbolic.hpp"

#include <algorithm>
#include <bitset>
#include <limits>

#include "holderspec/errors.hpp"

namespace holderspec {

namespace {

void check_symbol(int s) {
  if (s < 0 || static_cast<std::size_t>(s) >= kMaxAlphabet) {
    throw DomainError("symbol " + std::to_string(s) +
                      " outside supported alphabet [0, 64)");
  }
}

}  // namespace

Word::Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (Symbol s : symbols_) check_symbol(s);
}

Word::Word(std::initializer_list<int> symbols) {
  symbols_.reserve(symbols.size());
  for (int s : symbols) {
    check_symbol(s);
    symbols_.push_back(static_cast<Symbol>(s));
  }
}

Word Word::parse(std::string_view digits) {
  std::vector<Symbol> out;
  out.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw DomainError("invalid word character '" + std::string(1, c) + "'");
    }
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return Word(std::move(out));
}

Word Word::constant(Symbol s, std::size_t count) {
  return Word(std::vector<Symbol>(count, s));
}

void Word::push_back(Symbol s) {
  check_symbol(s);
  symbols_.push_back(s);
}

Word Word::prefix(std::size_t n) const {
  if (n > symbols_.size()) throw DomainError("prefix longer than word");
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + n));
}

Word Word::suffix_from(std::size_t start) const {
  if (start > symbols_.size()) throw DomainError("suffix start past end");
  return Word(std::vector<Symbol>(symbols_.begin() + start, symbols_.end()));
}

Word Word::repeated(std::size_t times) const {
  std::vector<Symbol> out;
  out.reserve(symbols_.size() * times);
  for (std::size_t i = 0; i < times; ++i) {
    out.insert(out.end(), symbols_.begin(), symbols_.end());
  }
  return Word(std::move(out));
}

Word& Word::operator+=(const Word& other) {
  symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
  return *this;
}

std::size_t Word::min_alphabet() const {
  if (symbols_.empty()) return 0;
  return static_cast<std::size_t>(
             *std::max_element(symbols_.begin(), symbols_.end())) +
         1;
}

bool Word::valid_for(std::size_t alphabet) const {
  return min_alphabet() <= alphabet;
}

std::size_t Word::distinct_letters() const {
  std::bitset<kMaxAlphabet> seen;
  for (Symbol s : symbols_) seen.set(s);
  return seen.count();
}

std::string Word::str() const {
  std::string out;
  for (Symbol s : symbols_) {
    if (s < 10) {
      out.push_back(static_cast<char>('0' + s));
    } else {
      out += "(" + std::to_string(s) + ")";
    }
  }
  return out;
}

Word operator+(Word lhs, const Word& rhs) {
  lhs += rhs;
  return lhs;
}

std::strong_ordering lex_compare(const Word& u, const Word& v) {
  if (u.size() != v.size()) {
    throw DomainError("lex_compare: length mismatch (" +
                      std::to_string(u.size()) + " vs " +
                      std::to_string(v.size()) + ")");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return u[i] <=> v[i];
  }
  return std::strong_ordering::equal;
}

std::uint64_t word_index(const Word& w, std::size_t alphabet) {
  std::uint64_t idx = 0;
  for (Symbol s : w) idx = idx * alphabet + s;
  return idx;
}

Word word_from_index(std::uint64_t index, std::size_t alphabet,
                     std::size_t length) {
  std::vector<Symbol> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<Symbol>(index % alphabet);
    index /= alphabet;
  }
  return Word(std::move(out));
}

std::uint64_t checked_word_count(std::size_t alphabet, std::size_t length,
                                 std::uint64_t cap) {
  if (alphabet < 2 || alphabet > kMaxAlphabet) {
    throw DomainError("alphabet size must lie in [2, 64]");
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > cap / alphabet) {
      throw CapacityError("enumerating " + std::to_string(alphabet) + "^" +
                          std::to_string(length) +
                          " words exceeds the cap of " + std::to_string(cap));
    }
    count *= alphabet;
  }
  if (count > cap) {
    throw CapacityError("word count exceeds the cap of " + std::to_string(cap));
  }
  return count;
}

WordEnumerator::WordEnumerator(std::size_t alphabet, std::size_t length,
                               std::uint64_t cap)
    : alphabet_(alphabet),
      length_(length),
      count_(checked_word_count(alphabet, length, cap)),
      current_(length, 0) {}

bool WordEnumerator::next(Word& out) {
  if (emitted_ == count_) return false;
  if (emitted_ > 0) {
    // Odometer increment, last position fastest.
    for (std::size_t i = length_; i-- > 0;) {
      if (++current_[i] < alphabet_) break;
      current_[i] = 0;
    }
  }
  ++emitted_;
  out = Word(current_);
  return true;
}

void for_each_word(std::size_t alphabet, std::size_t length,
                   const std::function<void(const Word&)>& fn,
                   std::uint64_t cap) {
  WordEnumerator it(alphabet, length, cap);
  Word w;
  while (it.next(w)) fn(w);
}

PeriodicWord::PeriodicWord(Word period) : period_(std::move(period)) {
  if (period_.empty()) throw DomainError("periodic word needs a nonempty period");
}

PeriodicWord PeriodicWord::rotated(std::size_t k) const {
  const std::size_t p = period_.size();
  std::vector<Symbol> out(p);
  for (std::size_t i = 0; i < p; ++i) out[i] = period_[(i + k) % p];
  return PeriodicWord(Word(std::move(out)));
}

Word PeriodicWord::prefix(std::size_t n) const {
  std::vector<Symbol> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return Word(std::move(out));
}

Sequence::Sequence(PeriodicWord tail) : tail_(std::move(tail)) {}

Sequence::Sequence(Word head, PeriodicWord tail)
    : head_(std::move(head)), tail_(std::move(tail)) {}

Symbol Sequence::at(std::size_t i) const {
  return i < head_.size() ? head_[i] : tail_.at(i - head_.size());
}

Word Sequence::prefix(std::size_t n) const {
  std::vector<Symbol> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return Word(std::move(out));
}

Sequence Sequence::shifted(std::size_t n) const {
  if (n <= head_.size()) return Sequence(head_.suffix_from(n), tail_);
  return Sequence(tail_.rotated((n - head_.size()) % tail_.period_length()));
}

bool Sequence::ends_in_constant(Symbol s, std::size_t from) const {
  for (Symbol c : tail_.period()) {
    if (c != s) return false;
  }
  for (std::size_t i = from; i < head_.size(); ++i) {
    if (head_[i] != s) return false;
  }
  return true;
}

std::size_t Sequence::min_alphabet() const {
  return std::max(head_.min_alphabet(), tail_.period().min_alphabet());
}

std::string Sequence::str() const {
  return head_.str() + "(" + tail_.period().str() + ")^inf";
}

}  // namespace holderspec
