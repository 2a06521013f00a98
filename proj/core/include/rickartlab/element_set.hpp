#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rickart {

  // Index of an element of a finite ring or module.
  using Elem = std::uint16_t;

  // Fixed-width bitset over element indices. Ordered lexicographically by
  // word so that sorted lattices are reproducible.
  class ElementSet {
   public:
    static constexpr std::size_t kCapacity = 256;

    ElementSet() = default;

    static ElementSet singleton(Elem e) {
      ElementSet s;
      s.insert(e);
      return s;
    }

    static ElementSet all(std::size_t n) {
      ElementSet s;
      for (std::size_t i = 0; i < n; ++i) {
        s.insert(static_cast<Elem>(i));
      }
      return s;
    }

    void insert(Elem e) noexcept {
      words_[e >> 6] |= std::uint64_t{1} << (e & 63);
    }

    void erase(Elem e) noexcept {
      words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
    }

    bool contains(Elem e) const noexcept {
      return (words_[e >> 6] >> (e & 63)) & 1U;
    }

    std::size_t size() const noexcept {
      std::size_t n = 0;
      for (auto w : words_) {
        n += static_cast<std::size_t>(std::popcount(w));
      }
      return n;
    }

    bool empty() const noexcept {
      for (auto w : words_) {
        if (w != 0) {
          return false;
        }
      }
      return true;
    }

    bool is_subset_of(ElementSet const& other) const noexcept {
      for (std::size_t i = 0; i < words_.size(); ++i) {
        if ((words_[i] & ~other.words_[i]) != 0) {
          return false;
        }
      }
      return true;
    }

    ElementSet& operator&=(ElementSet const& other) noexcept {
      for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= other.words_[i];
      }
      return *this;
    }

    ElementSet& operator|=(ElementSet const& other) noexcept {
      for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] |= other.words_[i];
      }
      return *this;
    }

    friend ElementSet operator&(ElementSet a, ElementSet const& b) noexcept {
      return a &= b;
    }

    friend ElementSet operator|(ElementSet a, ElementSet const& b) noexcept {
      return a |= b;
    }

    template <typename F>
    void for_each(F&& f) const {
      for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w != 0) {
          auto bit = static_cast<std::size_t>(std::countr_zero(w));
          f(static_cast<Elem>(i * 64 + bit));
          w &= w - 1;
        }
      }
    }

    std::vector<Elem> to_vector() const {
      std::vector<Elem> out;
      out.reserve(size());
      for_each([&out](Elem e) { out.push_back(e); });
      return out;
    }

    std::size_t hash() const noexcept {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (auto w : words_) {
        h ^= static_cast<std::size_t>(w);
        h *= 0x100000001b3ULL;
      }
      return h;
    }

    friend bool operator==(ElementSet const&, ElementSet const&) = default;
    friend auto operator<=>(ElementSet const&, ElementSet const&) = default;

   private:
    std::array<std::uint64_t, kCapacity / 64> words_{};
  };

  struct ElementSetHash {
    std::size_t operator()(ElementSet const& s) const noexcept {
      return s.hash();
    }
  };

  // Order used for lattices: by size, then by bits.
  inline bool size_then_bits_less(ElementSet const& a, ElementSet const& b) {
    auto sa = a.size();
    auto sb = b.size();
    return sa != sb ? sa < sb : a < b;
  }

}  // namespace rickart
