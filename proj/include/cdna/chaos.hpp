#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace cdna::chaos {

/// Iterations discarded by every ChaosStream before the first output.
inline constexpr std::size_t kBurnIn = 1000;

/// Size of the +x nudge applied once when an orbit degenerates.
inline constexpr double kPerturbation = 1e-12;

// ---------------------------------------------------------------------------
// TD-ERCS: tangent-delay ellipse reflecting cavity. The orbit bounces inside
// the ellipse x^2 + (y/mu)^2 = 1; the reflection slope uses the tangent at a
// point m steps back.

struct TdErcsParams {
    double mu = 0.5;     // (0,1)
    double x0 = 0.1;     // [-1,1]
    double alpha = 1.0;  // (0,pi)
    int m = 2;           // >= 2

    void validate() const;
};

struct EllipsePoint {
    double x = 0;
    double y = 0;
};

/// Fixed-capacity ring of the last m orbit points, oldest first.
class PointHistory {
public:
    explicit PointHistory(std::size_t capacity = 2);

    void push(EllipsePoint p);
    std::size_t size() const noexcept { return size_; }
    std::size_t capacity() const noexcept { return ring_.size(); }
    const EllipsePoint& oldest() const noexcept { return ring_[head_]; }
    const EllipsePoint& newest() const noexcept { return ring_[(head_ + size_ - 1) % ring_.size()]; }

    template <typename F>
    void for_each(F&& f)
    {
        for (std::size_t i = 0; i < size_; ++i) f(ring_[(head_ + i) % ring_.size()]);
    }

private:
    std::vector<EllipsePoint> ring_;
    std::size_t head_ = 0;
    std::size_t size_ = 0;
};

struct TdErcsState {
    double x = 0;
    double y = 0;
    double k = 0;  // slope of the current chord
    std::uint64_t n = 0;
    PointHistory history;
};

TdErcsState td_ercs_init(const TdErcsParams& params);

/// Advances one reflection and returns the new x.
double td_ercs_next(TdErcsState& state, const TdErcsParams& params);

// ---------------------------------------------------------------------------
// Intertwining (coupled logistic) map on (0,1)^3.

struct IntertwiningParams {
    double lambda = 3.99;
    double a1 = 34.1;
    double a2 = 38.1;
    double a3 = 36.1;
    double x0 = 0.5;
    double y0 = 0.5;
    double z0 = 0.5;

    void validate() const;
};

struct IntertwiningState {
    double x = 0;
    double y = 0;
    double z = 0;
};

IntertwiningState intertwining_init(const IntertwiningParams& params);
std::array<double, 3> intertwining_next(IntertwiningState& state, const IntertwiningParams& params);

// ---------------------------------------------------------------------------
// Chirikov map on [0,n)^2, in the printed form
//   A' = (A + B) mod n,  B' = (A + eta sin(2 pi A / n)) mod n.

struct ChirikovParams {
    double eta = 7.77;
    std::uint64_t n = 512;
    double a0 = 0;
    double b0 = 0;

    void validate() const;
};

struct ChirikovState {
    double a = 0;
    double b = 0;
};

ChirikovState chirikov_init(const ChirikovParams& params);
std::array<double, 2> chirikov_next(ChirikovState& state, const ChirikovParams& params);

// ---------------------------------------------------------------------------
// NCA: C' = (1 - xi^-4) cot(chi/(1+xi)) (1+1/xi)^xi tan(chi C) (1-C)^xi.

struct NcaParams {
    double c0 = 0.3;
    double chi = 1.0;
    double xi = 6.0;

    void validate() const;
};

/// True when (chi, xi) falls in one of the three admissible regions.
bool nca_admissible(double chi, double xi) noexcept;

struct NcaState {
    double c = 0;
    double gain = 0;  // the constant prefactor, fixed by (chi, xi)
};

NcaState nca_init(const NcaParams& params);
double nca_next(NcaState& state, const NcaParams& params);

// ---------------------------------------------------------------------------

enum class MapKind { TdErcs, Intertwining, Chirikov, Nca };

/// Scalar keystream over one chaotic map. Multi-variable maps emit their
/// variables round-robin (X,Y,Z for Intertwining; A,B for Chirikov); TD-ERCS
/// emits x. The constructor runs the burn-in.
class ChaosStream {
public:
    explicit ChaosStream(const TdErcsParams& params, std::size_t burn_in = kBurnIn);
    explicit ChaosStream(const IntertwiningParams& params, std::size_t burn_in = kBurnIn);
    explicit ChaosStream(const ChirikovParams& params, std::size_t burn_in = kBurnIn);
    explicit ChaosStream(const NcaParams& params, std::size_t burn_in = kBurnIn);

    MapKind kind() const noexcept;
    double next();
    std::vector<double> take(std::size_t count);

    /// Map iterations performed so far, burn-in included.
    std::uint64_t iterations() const noexcept { return iterations_; }

private:
    struct TdErcsGen {
        TdErcsParams params;
        TdErcsState state;
    };
    struct IntertwiningGen {
        IntertwiningParams params;
        IntertwiningState state;
    };
    struct ChirikovGen {
        ChirikovParams params;
        ChirikovState state;
    };
    struct NcaGen {
        NcaParams params;
        NcaState state;
    };

    void step();
    void burn(std::size_t count);

    std::variant<TdErcsGen, IntertwiningGen, ChirikovGen, NcaGen> gen_;
    std::array<double, 3> pending_{};
    std::size_t pending_size_ = 0;
    std::size_t pending_pos_ = 0;
    std::uint64_t iterations_ = 0;
};

/// floor(|v| * 1e14) mod modulus, evaluated exactly on the binary value of v.
std::uint64_t scaled_residue(double v, std::uint64_t modulus);

std::vector<std::uint8_t> chaotic_bytes(ChaosStream& stream, std::size_t count);
std::vector<std::uint32_t> chaotic_indices(ChaosStream& stream, std::size_t count,
                                           std::uint64_t modulus);

/// Stable ascending argsort: result[i] is the index of the i-th smallest value.
std::vector<std::size_t> permutation_from_sequence(std::span<const double> seq);

}  // namespace cdna::chaos
