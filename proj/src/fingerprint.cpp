#include "pathsel/fingerprint.hpp"

#include <bit>

namespace pathsel {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::string_view text, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// MurmurHash3 finalizer.
std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

}  // namespace

std::uint64_t HashFamily::operator()(int i, std::string_view text) const {
  const std::uint64_t g1 = fmix64(fnv1a(text, kFnvOffset ^ seed_));
  const std::uint64_t g2 = fmix64(fnv1a(text, kFnvOffset ^ std::rotl(seed_, 32) ^ 0x5bd1e995ULL)) | 1U;
  return g1 + static_cast<std::uint64_t>(i) * g2;
}

const HashFamily& default_hash_family() {
  static const HashFamily family;
  return family;
}

std::size_t Fingerprint::popcount() const {
  std::size_t n = 0;
  for (auto r : rows_) n += static_cast<std::size_t>(std::popcount(r));
  return n;
}

bool Fingerprint::header_covers_body() const {
  for (int r = 1; r < kRows; ++r) {
    if ((row(r) & ~row(0)) != 0) return false;
  }
  return true;
}

std::string Fingerprint::dump() const {
  std::string out;
  out.reserve(kBits + kRows);
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kColumns; ++c) out += test(r, c) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string Fingerprint::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(kBits / 4);
  for (auto r : rows_) {
    for (int shift = 60; shift >= 0; shift -= 4) out += kDigits[(r >> shift) & 0xF];
  }
  return out;
}

void insert(Fingerprint& fp, const AbstractClause& abstract, std::string_view concrete, const HashFamily& hashes) {
  for (int i = 0; i < HashFamily::kCount; ++i) {
    const int column = static_cast<int>(hashes(i, abstract.text) % Fingerprint::kColumns);
    const int row = 1 + static_cast<int>(hashes(i, concrete) % Fingerprint::kBodyRows);
    fp.set(0, column);
    fp.set(row, column);
  }
}

Fingerprint fingerprint_of(const PathCondition& pc, const HashFamily& hashes) {
  Fingerprint fp;
  for (const auto& c : pc.clauses) insert(fp, abstract_of(c), canonical(c), hashes);
  return fp;
}

Membership query(const Fingerprint& fp, const AbstractClause& abstract, std::string_view concrete,
                 const HashFamily& hashes) {
  for (int i = 0; i < HashFamily::kCount; ++i) {
    const int column = static_cast<int>(hashes(i, abstract.text) % Fingerprint::kColumns);
    const int row = 1 + static_cast<int>(hashes(i, concrete) % Fingerprint::kBodyRows);
    if (!fp.test(0, column) || !fp.test(row, column)) return Membership::kDefinitelyAbsent;
  }
  return Membership::kPossiblyPresent;
}

double jaccard(const Fingerprint& a, const Fingerprint& b) {
  std::size_t both = 0;
  std::size_t either = 0;
  for (int r = 0; r < Fingerprint::kRows; ++r) {
    both += static_cast<std::size_t>(std::popcount(a.row(r) & b.row(r)));
    either += static_cast<std::size_t>(std::popcount(a.row(r) | b.row(r)));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace pathsel
