#pragma once

// Multidimensional Bloom filter fingerprints of sliced path conditions.
//
// A fingerprint is a 16 x 64 bit matrix. Row 0 (the header) records the
// abstract shape of each clause through three indexed hashes; for every
// header column a clause selects, one bit of the column below (rows 1..15)
// records the concrete clause. Clauses that differ only in literals or
// indices therefore light the same columns.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "pathsel/symcore.hpp"

namespace pathsel {

inline constexpr std::uint64_t kDefaultHashSeed = 0x9E3779B97F4A7C15ULL;

// h_i(x) = g1(x) + i * g2(x) over two seeded base hashes (double hashing).
class HashFamily {
 public:
  static constexpr int kCount = 3;

  explicit HashFamily(std::uint64_t seed = kDefaultHashSeed) : seed_(seed) {}

  std::uint64_t operator()(int i, std::string_view text) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

class Fingerprint {
 public:
  static constexpr int kColumns = 64;
  static constexpr int kRows = 16;
  static constexpr int kBodyRows = kRows - 1;
  static constexpr std::size_t kBits = static_cast<std::size_t>(kColumns) * kRows;

  bool test(int row, int column) const { return (rows_[static_cast<std::size_t>(row)] >> column) & 1U; }
  void set(int row, int column) { rows_[static_cast<std::size_t>(row)] |= std::uint64_t{1} << column; }

  // Row-major flat addressing: bit = row * 64 + column.
  bool test_flat(std::size_t bit) const { return test(static_cast<int>(bit / kColumns), static_cast<int>(bit % kColumns)); }
  void set_flat(std::size_t bit) { set(static_cast<int>(bit / kColumns), static_cast<int>(bit % kColumns)); }

  std::uint64_t row(int r) const { return rows_[static_cast<std::size_t>(r)]; }
  std::size_t popcount() const;
  bool empty() const { return popcount() == 0; }

  // Every set body bit lies under a set header bit.
  bool header_covers_body() const;

  // 16 lines of 64 '0'/'1' characters, header first, column 0 leftmost.
  std::string dump() const;
  // 256 lowercase hex digits, row 0 first, each row most significant first.
  std::string hex() const;

  bool operator==(const Fingerprint&) const = default;

 private:
  std::array<std::uint64_t, kRows> rows_{};
};

const HashFamily& default_hash_family();

void insert(Fingerprint& fp, const AbstractClause& abstract, std::string_view concrete,
            const HashFamily& hashes = default_hash_family());

// Fresh matrix holding every clause of an (already sliced) path condition.
Fingerprint fingerprint_of(const PathCondition& pc, const HashFamily& hashes = default_hash_family());

enum class Membership { kDefinitelyAbsent, kPossiblyPresent };

Membership query(const Fingerprint& fp, const AbstractClause& abstract, std::string_view concrete,
                 const HashFamily& hashes = default_hash_family());

// a11 / (a11 + a10 + a01) over the flattened 1024-bit vectors; 1 when both
// are empty.
double jaccard(const Fingerprint& a, const Fingerprint& b);

}  // namespace pathsel
