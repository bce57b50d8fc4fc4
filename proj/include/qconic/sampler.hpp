#pragma once

#include <qconic/conic.hpp>
#include <qconic/series.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace qconic
{

using Rng = std::mt19937_64;

/// Independent stream for one (seed, stream, index) triple. Built through
/// std::seed_seq, so the sequence is the same on every conforming platform.
Rng sample_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng &rng);

struct HerglotzAtom
{
    double weight;
    cplx point; // on the unit circle, or inside it for a contracted sample
};

/// Atomic probability measure on the circle; h(z) = sum w_j (1 + x_j z)/(1 - x_j z).
struct HerglotzSample
{
    std::vector<HerglotzAtom> atoms;

    int atom_count() const noexcept
    {
        return static_cast<int>(atoms.size());
    }
};

/// Uniform on {1, ..., max_atoms}.
int draw_atom_count(Rng &rng, int max_atoms = 5);

/// Angles uniform on [0, 2 pi), weights from the flat Dirichlet distribution.
/// Points sit at |x| = radius (radius 1 is the Herglotz measure proper;
/// radius < 1 gives the same measure seen through h(radius z)).
HerglotzSample draw_herglotz(Rng &rng, int atom_count, double radius = 1.0);

/// How a scan picks the atom radius for each draw.
enum class AtomRadius {
    unit,  // always 1
    mixed, // 1 with probability 1/2, otherwise uniform on (0, 1)
};

double draw_atom_radius(Rng &rng, AtomRadius mode);

/// h_0 = 1, h_n = 2 sum_j w_j x_j^n.
ComplexSeries caratheodory_series(const HerglotzSample &s, int order);

ComplexSeries sample_caratheodory(Rng &rng, int atom_count, int order);

/// (h - 1)/(h + 1); h must have h_0 = 1.
ComplexSeries schwarz_from_caratheodory(const ComplexSeries &h);
/// (1 + u)/(1 - u); u must have u_0 = 0.
ComplexSeries caratheodory_from_schwarz(const ComplexSeries &u);

/// p(u(z)) truncated at `order`, from the extremal coefficients
/// (P.count() >= order, u.order() >= order).
ComplexSeries make_target(const ExtremalCoeffs &P, const ComplexSeries &u, int order);
ComplexSeries make_target(const ConicParams &p, const ComplexSeries &u, int order);

/// Inverse of make_target: the Schwarz series u with p(u) = target.
ComplexSeries schwarz_from_target(const ExtremalCoeffs &P, const ComplexSeries &target);

} // namespace qconic
