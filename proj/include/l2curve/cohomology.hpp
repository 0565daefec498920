#pragma once

#include "l2curve/surface.hpp"
#include "l2curve/unit_eigen.hpp"
#include "l2curve/weights.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace l2c {

// Local system V on the punctured surface: one invertible matrix per
// generator in the order a_1, b_1, ..., a_g, b_g, c_1, ..., c_s.
template <class K> struct LocalSystem {
    SurfaceData surface;
    int n = 0;
    std::vector<Matrix<K>> mats;

    const Matrix<K>& generator(int i) const { return mats[i]; }
    const Matrix<K>& meridian(int p) const { return mats[2 * surface.genus + p]; }
    static LocalSystem trivial(SurfaceData surf, int rank_n = 1);
};

// Checks matrix shapes, invertibility, the surface relation and
// quasi-unitarity of the meridians; throws InputError / NotQuasiUnitary with
// the offending generator named.
template <class K> void validate_local_system(const LocalSystem<K>& sys, const NumericConfig& cfg);

enum class Normalization { plain, vonNeumann };
enum class StalkModel { base, extensionOfPullback, pullbackOfExtension };

std::string to_string(Normalization n);
std::string to_string(StalkModel m);

struct CohomologyReport {
    Rational h0{0}, h1{0}, h2{0}, chi{0};
    Normalization normalization = Normalization::plain;
    StalkModel model = StalkModel::base;
};

CohomologyReport make_report(Rational h0, Rational h1, Rational h2, Normalization norm, StalkModel model);

// dim ker(T_p - I), the stalk of j_* V at the puncture.
template <class K> int stalk_dim(const Matrix<K>& t_p, const NumericConfig& cfg);

// Cohomology of j_* V on the base: h0 = simultaneous invariants, h2 =
// coinvariants, chi = (2-2g-s) n + sum_p stalk_dim(T_p), h1 by chi.
template <class K> CohomologyReport global_h(const LocalSystem<K>& sys, const NumericConfig& cfg);

// Independent oracle for global_h().h1: parabolic group cocycles (meridian
// components constrained to Im(T_p - I)) modulo principal cocycles, with the
// relation imposed through its Fox linearization.
template <class K> int parabolic_h1(const LocalSystem<K>& sys, const NumericConfig& cfg);

// Rank n |Gamma| system with generator matrices A (x) regular_rep(phi(gen)).
template <class K> LocalSystem<K> induced_cover_system(const LocalSystem<K>& sys, const CoveringDatum& c,
                                                       const NumericConfig& cfg);

template <class K>
CohomologyReport l2_cohomology_finite(const LocalSystem<K>& sys, const CoveringDatum& c, StalkModel model,
                                      const NumericConfig& cfg);

// Side-by-side run of both stalk models with the divergence data.
struct CoverAnalysis {
    CohomologyReport extension_of_pullback;
    CohomologyReport pullback_of_extension;
    std::vector<int> q_dims;          // dim Q_p per puncture
    std::vector<int> big_stalks;      // dim ker(T_p (x) R_p - I)
    std::vector<int> base_stalks;     // dim ker(T_p - I)
    CoverInvariants invariants;
    bool divergent = false;
};
template <class K> CoverAnalysis analyze_cover(const LocalSystem<K>& sys, const CoveringDatum& c,
                                               const NumericConfig& cfg);

struct RiemannHurwitzRecord {
    Rational lhs{0};
    Rational rhs{0};
    bool equal = false;
};
template <class K>
RiemannHurwitzRecord riemann_hurwitz_check(const LocalSystem<K>& sys, const CoveringDatum& c,
                                           const NumericConfig& cfg);

// Abelian character family: global_h of the system twisted by unit
// characters of Z^d at seeded sample points plus the trivial character.
struct CharacterSample {
    std::vector<double> theta; // point on the d-torus, coordinates in [0, 2pi)
    std::array<long, 3> dims{0, 0, 0};
    bool jump = false;
};
struct CharacterFamily {
    std::array<long, 3> generic{0, 0, 0};
    std::array<Rational, 3> von_neumann{Rational(0), Rational(0), Rational(0)};
    std::vector<CharacterSample> samples; // trivial character first
};
template <class K>
CharacterFamily character_family(const LocalSystem<K>& sys, const CoveringDatum& c, int samples,
                                 std::uint64_t seed, const NumericConfig& cfg);

// Points of Sigma carrying a polarized Hodge structure dimension, with
// optional (p, q) bigrading tags.
struct SkyscraperPoint {
    std::string label;
    int dim = 0;
    std::vector<std::pair<int, int>> hodge_tags;
};
struct SkyscraperDatum {
    std::vector<SkyscraperPoint> points;
};
CohomologyReport skyscraper_summand(const SkyscraperDatum& s, const CoveringDatum& c);

} // namespace l2c
