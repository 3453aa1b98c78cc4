#ifndef KPGNN_INTERN_HPP
#define KPGNN_INTERN_HPP

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kpgnn {

using ColorId = std::uint32_t;

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_words(const std::vector<std::uint64_t>& words, std::uint64_t seed) {
  std::uint64_t h = mix64(seed ^ words.size());
  for (auto w : words) h = mix64(h ^ mix64(w + seed));
  return h;
}

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const noexcept {
    return static_cast<std::size_t>(hash_words(w, 0x243f6a8885a308d3ULL));
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
    return static_cast<std::size_t>(p.first ^ mix64(p.second));
  }
};

}  // namespace detail

enum class InternMode {
  /// Dictionary from the full key to a fresh id: injective by construction.
  kExact,
  /// Dictionary from a 128-bit digest of the key. Faster and smaller, but
  /// collisions are possible in principle; not used by the correctness suites.
  kHashed128,
};

/// Maps canonical tuple encodings to dense color ids. Two keys get the same
/// id iff they are equal (exact mode). Runs that share one interner produce
/// directly comparable ids.
class ColorInterner {
 public:
  explicit ColorInterner(InternMode mode = InternMode::kExact) : mode_(mode) {}

  ColorId intern(const std::vector<std::uint64_t>& key) {
    const auto next = static_cast<ColorId>(size());
    if (mode_ == InternMode::kExact) {
      auto it = exact_.find(key);
      if (it != exact_.end()) return it->second;
      exact_.emplace(key, next);
      return next;
    }
    const std::pair<std::uint64_t, std::uint64_t> digest{
        detail::hash_words(key, 0x13198a2e03707344ULL), detail::hash_words(key, 0xa4093822299f31d0ULL)};
    return hashed_.try_emplace(digest, next).first->second;
  }

  std::size_t size() const noexcept {
    return mode_ == InternMode::kExact ? exact_.size() : hashed_.size();
  }
  InternMode mode() const noexcept { return mode_; }

 private:
  InternMode mode_;
  std::unordered_map<std::vector<std::uint64_t>, ColorId, detail::WordsHash> exact_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, ColorId, detail::PairHash> hashed_;
};

// Domain tags keep keys from different producers (initial labels, refinement
// steps, peripheral encodings, pair colors) from colliding in a shared table.
namespace tag {
inline constexpr std::uint64_t kInitial = 0x1000;
inline constexpr std::uint64_t kRefine = 0x2000;
inline constexpr std::uint64_t kPeripheral = 0x3000;
inline constexpr std::uint64_t kDistance = 0x4000;
inline constexpr std::uint64_t kPairInitial = 0x5000;
inline constexpr std::uint64_t kPairRefine = 0x6000;
}  // namespace tag

}  // namespace kpgnn

#endif  // KPGNN_INTERN_HPP
