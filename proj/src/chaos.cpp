#include "cdna/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cdna/errors.hpp"

namespace cdna::chaos {

namespace {

// Floored remainder into [0, n). fmod is exact; adding n to a tiny negative
// remainder can round up to n itself, which is folded back to the low end.
double wrap(double v, double n)
{
    double r = std::fmod(v, n);
    if (r < 0) r += n;
    if (r >= n) r -= n;
    return r;
}

bool finite(double v) { return std::isfinite(v); }

[[noreturn]] void degenerate(const char* map)
{
    throw NumericalDegeneracy(std::string(map) + " orbit degenerated twice in a row");
}

// Applies `step` to `state`. If the candidate is rejected by `valid`, the
// pre-step state is nudged once with `perturb` and the step retried; a second
// rejection is fatal.
template <typename State, typename Step, typename Valid, typename Perturb>
auto guarded_step(State& state, Step step, Valid valid, Perturb perturb, const char* map)
{
    State trial = state;
    auto out = step(trial);
    if (valid(trial, out)) {
        state = std::move(trial);
        return out;
    }
    perturb(state);
    trial = state;
    out = step(trial);
    if (!valid(trial, out)) degenerate(map);
    state = std::move(trial);
    return out;
}

}  // namespace

// --- TD-ERCS ---------------------------------------------------------------

void TdErcsParams::validate() const
{
    if (!(mu > 0 && mu < 1)) throw RangeError("TD-ERCS mu must lie in (0,1)");
    if (!(x0 >= -1 && x0 <= 1)) throw RangeError("TD-ERCS x0 must lie in [-1,1]");
    if (!(alpha > 0 && alpha < std::numbers::pi)) throw RangeError("TD-ERCS alpha must lie in (0,pi)");
    if (m < 2) throw RangeError("TD-ERCS delay m must be >= 2");
}

PointHistory::PointHistory(std::size_t capacity) : ring_(capacity) {}

void PointHistory::push(EllipsePoint p)
{
    if (size_ < ring_.size()) {
        ring_[(head_ + size_) % ring_.size()] = p;
        ++size_;
    } else {
        ring_[head_] = p;
        head_ = (head_ + 1) % ring_.size();
    }
}

namespace {

// Moves a point along x by kPerturbation (wrapping within [-1,1]) and puts it
// back on the ellipse on the same side of the major axis.
void nudge_onto_ellipse(EllipsePoint& p, double mu)
{
    p.x += kPerturbation;
    if (p.x > 1) p.x -= 2;
    const double y = mu * std::sqrt(1 - p.x * p.x);
    p.y = std::signbit(p.y) ? -y : y;
}

}  // namespace

TdErcsState td_ercs_init(const TdErcsParams& params)
{
    params.validate();
    const double mu = params.mu;

    EllipsePoint p0{params.x0, mu * std::sqrt(1 - params.x0 * params.x0)};
    if (p0.y == 0) nudge_onto_ellipse(p0, mu);

    const double kp0 = -(p0.x / p0.y) * mu * mu;
    const double t = std::tan(params.alpha);
    const double k0 = -(t + kp0) / (1 - kp0 * t);
    if (!finite(k0)) throw NumericalDegeneracy("TD-ERCS initial slope is not finite");

    TdErcsState s{p0.x, p0.y, k0, 0, PointHistory(static_cast<std::size_t>(params.m))};
    s.history.push(p0);
    return s;
}

double td_ercs_next(TdErcsState& state, const TdErcsParams& params)
{
    const double mu = params.mu;
    const auto m = static_cast<std::uint64_t>(params.m);

    auto step = [&](TdErcsState& s) {
        const double k = s.k;
        const double x = s.x;
        const double y = s.y;
        const double xn = -(2 * k * y + x * (mu * mu - k * k)) / (mu * mu + k * k);
        const double yn = k * (xn - x) + y;

        const std::uint64_t n = s.n + 1;
        // k'_{n-m}: tangent slope at the previous point while n < m, else at
        // the point m steps back (the oldest entry of the full ring).
        const EllipsePoint& ref = n < m ? s.history.newest() : s.history.oldest();
        const double kp = -(ref.x / ref.y) * mu * mu;
        const double kn = (2 * kp - k + k * kp * kp) / (1 + 2 * k * kp - kp * kp);

        s.x = xn;
        s.y = yn;
        s.k = kn;
        s.n = n;
        s.history.push({xn, yn});
        return xn;
    };
    auto valid = [](const TdErcsState& s, double) {
        return finite(s.x) && finite(s.y) && finite(s.k) && s.x >= -1 && s.x <= 1;
    };
    auto perturb = [mu](TdErcsState& s) {
        s.history.for_each([mu](EllipsePoint& p) { nudge_onto_ellipse(p, mu); });
        s.x = s.history.newest().x;
        s.y = s.history.newest().y;
    };
    return guarded_step(state, step, valid, perturb, "TD-ERCS");
}

// --- Intertwining ------------------------------------------------------------

void IntertwiningParams::validate() const
{
    if (!(lambda >= 0 && lambda <= 3.999)) throw RangeError("Intertwining lambda must lie in [0,3.999]");
    if (!(std::fabs(a1) > 33.5)) throw RangeError("Intertwining requires |a1| > 33.5");
    if (!(std::fabs(a2) > 37.9)) throw RangeError("Intertwining requires |a2| > 37.9");
    if (!(std::fabs(a3) > 35.7)) throw RangeError("Intertwining requires |a3| > 35.7");
    for (double v : {x0, y0, z0}) {
        if (!(v > 0 && v < 1)) throw RangeError("Intertwining seeds must lie in (0,1)");
    }
}

IntertwiningState intertwining_init(const IntertwiningParams& params)
{
    params.validate();
    return {params.x0, params.y0, params.z0};
}

std::array<double, 3> intertwining_next(IntertwiningState& state, const IntertwiningParams& p)
{
    auto step = [&p](IntertwiningState& s) {
        const double xn = wrap(p.lambda * p.a1 * s.y * (1 - s.x) + s.z, 1.0);
        const double yn = wrap((p.lambda * p.a2 * s.y + s.z) / (1 + xn * xn), 1.0);
        const double zn = wrap(p.lambda * (xn + yn + p.a3) * std::sin(s.z), 1.0);
        s = {xn, yn, zn};
        return std::array<double, 3>{xn, yn, zn};
    };
    auto valid = [](const IntertwiningState& s, const std::array<double, 3>&) {
        return s.x > 0 && s.x < 1 && s.y > 0 && s.y < 1 && s.z > 0 && s.z < 1;
    };
    auto perturb = [](IntertwiningState& s) {
        s.x = wrap(s.x + kPerturbation, 1.0);
        s.y = wrap(s.y + kPerturbation, 1.0);
        s.z = wrap(s.z + kPerturbation, 1.0);
    };
    return guarded_step(state, step, valid, perturb, "Intertwining");
}

// --- Chirikov ------------------------------------------------------------------

void ChirikovParams::validate() const
{
    if (!(eta > 0)) throw RangeError("Chirikov eta must be > 0");
    if (n == 0) throw RangeError("Chirikov lattice size must be >= 1");
    const auto size = static_cast<double>(n);
    if (!(a0 >= 0 && a0 < size) || !(b0 >= 0 && b0 < size)) {
        throw RangeError("Chirikov seeds must lie in [0,n)");
    }
}

ChirikovState chirikov_init(const ChirikovParams& params)
{
    params.validate();
    return {params.a0, params.b0};
}

std::array<double, 2> chirikov_next(ChirikovState& state, const ChirikovParams& p)
{
    const auto size = static_cast<double>(p.n);
    auto step = [&](ChirikovState& s) {
        const double an = wrap(s.a + s.b, size);
        const double bn = wrap(s.a + p.eta * std::sin(2 * std::numbers::pi * s.a / size), size);
        s = {an, bn};
        return std::array<double, 2>{an, bn};
    };
    auto valid = [size](const ChirikovState& s, const std::array<double, 2>&) {
        return s.a >= 0 && s.a < size && s.b >= 0 && s.b < size;
    };
    auto perturb = [size](ChirikovState& s) {
        s.a = wrap(s.a + kPerturbation, size);
        s.b = wrap(s.b + kPerturbation, size);
    };
    return guarded_step(state, step, valid, perturb, "Chirikov");
}

// --- NCA -------------------------------------------------------------------------

bool nca_admissible(double chi, double xi) noexcept
{
    return (chi > 0 && chi <= 1.4 && xi >= 5 && xi <= 43) ||
           (chi > 1.4 && chi <= 1.5 && xi >= 9 && xi <= 38) ||
           (chi > 1.5 && chi <= 1.57 && xi >= 3 && xi <= 15);
}

void NcaParams::validate() const
{
    if (!(c0 > 0 && c0 < 1)) throw RangeError("NCA seed must lie in (0,1)");
    if (!nca_admissible(chi, xi)) throw RangeError("NCA (chi, xi) outside every admissible region");
}

NcaState nca_init(const NcaParams& params)
{
    params.validate();
    const double xi = params.xi;
    const double gain =
        (1 - std::pow(xi, -4.0)) / std::tan(params.chi / (1 + xi)) * std::pow(1 + 1 / xi, xi);
    return {params.c0, gain};
}

double nca_next(NcaState& state, const NcaParams& p)
{
    auto step = [&p](NcaState& s) {
        s.c = s.gain * std::tan(p.chi * s.c) * std::pow(1 - s.c, p.xi);
        return s.c;
    };
    auto valid = [](const NcaState& s, double) { return s.c > 0 && s.c < 1; };
    auto perturb = [](NcaState& s) { s.c = wrap(s.c + kPerturbation, 1.0); };
    return guarded_step(state, step, valid, perturb, "NCA");
}

// --- ChaosStream ---------------------------------------------------------------

ChaosStream::ChaosStream(const TdErcsParams& params, std::size_t burn_in)
    : gen_(TdErcsGen{params, td_ercs_init(params)})
{
    burn(burn_in);
}

ChaosStream::ChaosStream(const IntertwiningParams& params, std::size_t burn_in)
    : gen_(IntertwiningGen{params, intertwining_init(params)})
{
    burn(burn_in);
}

ChaosStream::ChaosStream(const ChirikovParams& params, std::size_t burn_in)
    : gen_(ChirikovGen{params, chirikov_init(params)})
{
    burn(burn_in);
}

ChaosStream::ChaosStream(const NcaParams& params, std::size_t burn_in)
    : gen_(NcaGen{params, nca_init(params)})
{
    burn(burn_in);
}

MapKind ChaosStream::kind() const noexcept
{
    return static_cast<MapKind>(gen_.index());
}

void ChaosStream::step()
{
    pending_pos_ = 0;
    std::visit(
        [this](auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, TdErcsGen>) {
                pending_[0] = td_ercs_next(g.state, g.params);
                pending_size_ = 1;
            } else if constexpr (std::is_same_v<G, IntertwiningGen>) {
                const auto v = intertwining_next(g.state, g.params);
                std::copy(v.begin(), v.end(), pending_.begin());
                pending_size_ = 3;
            } else if constexpr (std::is_same_v<G, ChirikovGen>) {
                const auto v = chirikov_next(g.state, g.params);
                std::copy(v.begin(), v.end(), pending_.begin());
                pending_size_ = 2;
            } else {
                pending_[0] = nca_next(g.state, g.params);
                pending_size_ = 1;
            }
        },
        gen_);
    ++iterations_;
}

void ChaosStream::burn(std::size_t count)
{
    for (std::size_t i = 0; i < count; ++i) step();
    pending_size_ = 0;
    pending_pos_ = 0;
}

double ChaosStream::next()
{
    if (pending_pos_ == pending_size_) step();
    return pending_[pending_pos_++];
}

std::vector<double> ChaosStream::take(std::size_t count)
{
    std::vector<double> out(count);
    for (auto& v : out) v = next();
    return out;
}

// --- extraction ----------------------------------------------------------------

namespace {

using u128 = unsigned __int128;

std::uint64_t pow2_mod(int exponent, std::uint64_t modulus)
{
    u128 result = 1 % modulus;
    u128 base = 2 % modulus;
    for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
        if (e & 1u) result = result * base % modulus;
        base = base * base % modulus;
    }
    return static_cast<std::uint64_t>(result);
}

}  // namespace

std::uint64_t scaled_residue(double v, std::uint64_t modulus)
{
    if (modulus == 0) throw RangeError("modulus must be >= 1");
    if (!finite(v)) throw RangeError("cannot scale a non-finite chaotic value");
    v = std::fabs(v);
    if (v == 0) return 0;

    // |v| = mantissa * 2^exponent exactly, with a 53-bit integer mantissa.
    int exponent = 0;
    const double fraction = std::frexp(v, &exponent);
    const auto mantissa = static_cast<std::uint64_t>(std::ldexp(fraction, 53));
    exponent -= 53;

    const u128 product = static_cast<u128>(mantissa) * 100'000'000'000'000ULL;
    if (exponent >= 0) {
        return static_cast<std::uint64_t>(product % modulus * pow2_mod(exponent, modulus) % modulus);
    }
    if (exponent <= -128) return 0;
    return static_cast<std::uint64_t>((product >> -exponent) % modulus);
}

std::vector<std::uint8_t> chaotic_bytes(ChaosStream& stream, std::size_t count)
{
    std::vector<std::uint8_t> out(count);
    for (auto& b : out) b = static_cast<std::uint8_t>(scaled_residue(stream.next(), 256));
    return out;
}

std::vector<std::uint32_t> chaotic_indices(ChaosStream& stream, std::size_t count,
                                           std::uint64_t modulus)
{
    if (modulus == 0 || modulus > (std::uint64_t{1} << 32)) {
        throw RangeError("index modulus must lie in [1, 2^32]");
    }
    std::vector<std::uint32_t> out(count);
    for (auto& i : out) i = static_cast<std::uint32_t>(scaled_residue(stream.next(), modulus));
    return out;
}

std::vector<std::size_t> permutation_from_sequence(std::span<const double> seq)
{
    if (!std::all_of(seq.begin(), seq.end(), finite)) {
        throw RangeError("permutation source contains a non-finite value");
    }
    std::vector<std::size_t> perm(seq.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&seq](std::size_t a, std::size_t b) { return seq[a] < seq[b]; });
    return perm;
}

}  // namespace cdna::chaos
