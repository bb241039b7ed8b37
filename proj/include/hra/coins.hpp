#pragma once

#include "hra/rational.hpp"
#include "hra/seed.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace hra {

/// Thrown by tape-backed coin sources when a process requests a bit beyond
/// the current prefix. The exact-enumeration driver catches it and branches.
struct CoinTapeExhausted {};

class CoinSource {
  public:
    virtual ~CoinSource() = default;
    virtual bool next_bit() = 0;
    std::uint64_t consumed() const { return consumed_; }

    /// Exact Bernoulli(p) draw. Dyadic p uses exactly log2(denominator) bits;
    /// general p bisects against the binary expansion and halts with
    /// probability 1 (expected two bits).
    bool bernoulli(const Rational& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        unsigned bits = 0;
        if (is_dyadic(p, &bits)) {
            // p = a / 2^bits in lowest terms.
            const std::uint64_t a =
                boost::multiprecision::numerator(p).convert_to<std::uint64_t>();
            std::uint64_t v = 0;
            for (unsigned i = 0; i < bits; ++i) v = (v << 1) | (next_bit() ? 1u : 0u);
            return v < a;
        }
        // Compare a uniform U bit-by-bit against p's binary expansion.
        Rational lo(0), hi(1);
        for (;;) {
            Rational mid = (lo + hi) / 2;
            if (next_bit()) {
                lo = mid;
                if (lo >= p) return false;
            } else {
                hi = mid;
                if (hi <= p) return true;
            }
        }
    }

  protected:
    std::uint64_t consumed_ = 0;
};

class PrngCoins final : public CoinSource {
  public:
    explicit PrngCoins(Seed seed) : rng_(seed) {}
    bool next_bit() override {
        if (pending_ == 0) {
            buffer_ = rng_();
            pending_ = 64;
        }
        bool bit = buffer_ & 1;
        buffer_ >>= 1;
        --pending_;
        ++consumed_;
        return bit;
    }

  private:
    std::mt19937_64 rng_;
    std::uint64_t buffer_ = 0;
    int pending_ = 0;
};

/// One fixed bit prefix shared by every process of an enumerated run. Bits
/// are handed out in global draw order, which the deterministic scheduler
/// makes reproducible.
struct CoinTape {
    std::vector<bool> bits;
    std::size_t cursor = 0;
};

class TapeCoins final : public CoinSource {
  public:
    explicit TapeCoins(std::shared_ptr<CoinTape> tape) : tape_(std::move(tape)) {}
    bool next_bit() override {
        if (tape_->cursor >= tape_->bits.size()) throw CoinTapeExhausted{};
        ++consumed_;
        return tape_->bits[tape_->cursor++];
    }

  private:
    std::shared_ptr<CoinTape> tape_;
};

/// Handed to process factories; yields per-subprocess coin sources. In PRNG
/// mode each child gets an independent stream seeded from (seed, index); in
/// tape mode all children share the enumerated prefix.
class CoinContext {
  public:
    static CoinContext from_seed(Seed seed) { return CoinContext(seed, nullptr); }
    static CoinContext from_tape(std::shared_ptr<CoinTape> tape) {
        return CoinContext(0, std::move(tape));
    }

    CoinContext child(std::uint64_t index) const {
        return CoinContext(derive_seed(seed_, index), tape_);
    }

    std::unique_ptr<CoinSource> stream() const {
        if (tape_) return std::make_unique<TapeCoins>(tape_);
        return std::make_unique<PrngCoins>(seed_);
    }

    Seed seed() const { return seed_; }
    bool enumerated() const { return tape_ != nullptr; }

  private:
    CoinContext(Seed seed, std::shared_ptr<CoinTape> tape)
        : seed_(seed), tape_(std::move(tape)) {}
    Seed seed_;
    std::shared_ptr<CoinTape> tape_;
};

}  // namespace hra
