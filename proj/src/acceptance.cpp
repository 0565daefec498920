#include "l2curve/acceptance.hpp"

#include "l2curve/disk.hpp"
#include "l2curve/flat_series.hpp"
#include "l2curve/gamma.hpp"
#include "l2curve/instances.hpp"
#include "l2curve/probe.hpp"

#include <cmath>
#include <sstream>

namespace l2c {

namespace {

using G = GaussianRational;

SurfaceData sphere3() {
    SurfaceData s;
    s.genus = 0;
    s.punctures = {"p1", "p2", "p3"};
    return s;
}

LocalSystem<G> rank1_system(const SurfaceData& surf, const std::vector<int>& meridians) {
    LocalSystem<G> sys;
    sys.surface = surf;
    sys.n = 1;
    for (int i = 0; i < 2 * surf.genus; ++i) sys.mats.push_back(Matrix<G>::identity(1));
    for (int v : meridians) {
        Matrix<G> m(1, 1);
        m(0, 0) = G(v);
        sys.mats.push_back(m);
    }
    return sys;
}

CoveringDatum z2_sphere_cover(const SurfaceData& surf) {
    CoveringDatum c;
    c.base = surf;
    c.group = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(2));
    c.images = {1, 1, 0};
    return c;
}

LocalType lt(int n, std::vector<std::pair<Rational, std::vector<int>>> parts) {
    std::vector<LocalPart> ps;
    for (auto& [a, blocks] : parts) ps.push_back({RotationNumber(a), blocks});
    return make_local_type(n, std::move(ps));
}

struct Runner {
    const NumericConfig& cfg;
    std::ostream* progress;
    std::vector<CriterionResult> results;

    void record(int id, const std::string& name, bool passed, const std::string& details) {
        results.push_back({id, name, passed, details});
        if (progress)
            *progress << (passed ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << name
                      << (details.empty() ? "" : " -- " + details) << "\n";
    }

    template <class F> void criterion(int id, const std::string& name, F&& body) {
        std::string details;
        bool passed = false;
        try {
            passed = body(details);
        } catch (const std::exception& e) {
            details = std::string("exception: ") + e.what();
        }
        record(id, name, passed, details);
    }
};

} // namespace

std::vector<CriterionResult> run_acceptance(const NumericConfig& cfg, std::ostream* progress) {
    Runner r{cfg, progress, {}};

    // 1. L2 Riemann-Hurwitz identity on 200 seeded random instances.
    r.criterion(1, "L2 Riemann-Hurwitz identity on 200 random instances", [&](std::string& details) {
        std::mt19937_64 rng(20200101);
        InstanceOptions opt; // g <= 2, s <= 4, rank <= 4, |Gamma| <= 24
        int exact_runs = 0, float_runs = 0;
        for (int t = 0; t < 200; ++t) {
            auto sys = random_local_system(rng, opt);
            InstanceOptions cover_opt = opt;
            bool exact_pass = t % 10 < 3; // exact arithmetic on a size-capped subset
            cover_opt.max_induced_dim = exact_pass ? 36 : 120;
            auto cover = random_cover(rng, sys.surface, sys.n, cover_opt);
            if (exact_pass) {
                auto rec = riemann_hurwitz_check(sys, cover, cfg);
                if (!rec.equal || rec.lhs != rec.rhs) {
                    details = "exact instance " + std::to_string(t) + " unequal";
                    return false;
                }
                ++exact_runs;
            } else {
                auto fsys = cast_system<Complex>(sys);
                auto rec = riemann_hurwitz_check(fsys, cover, cfg);
                double gap = std::abs(static_cast<double>(rec.lhs - rec.rhs));
                if (gap > 1e-9) {
                    details = "float instance " + std::to_string(t) + " gap " + std::to_string(gap);
                    return false;
                }
                ++float_runs;
            }
        }
        details = std::to_string(exact_runs) + " exact + " + std::to_string(float_runs) + " float instances";
        return true;
    });

    // 2. Classical Riemann-Hurwitz recovery on the branched double cover.
    r.criterion(2, "classical Riemann-Hurwitz recovery (Z/2 over the 3-punctured sphere)",
                [&](std::string& details) {
                    auto surf = sphere3();
                    auto sys = LocalSystem<G>::trivial(surf);
                    auto cover = z2_sphere_cover(surf);
                    auto inv = validate_covering(cover);
                    auto rec = riemann_hurwitz_check(sys, cover, cfg);
                    details = "chi(X~) = " + std::to_string(*inv.euler_upstairs) + ", lhs = rhs = " +
                              format_rational(rec.lhs);
                    return *inv.euler_upstairs == 2 && rec.equal && rec.lhs == -1 && rec.rhs == -1;
                });

    // 3. Trivial-cover collapse of both models.
    r.criterion(3, "trivial-cover collapse on 100 random instances", [&](std::string& details) {
        std::mt19937_64 rng(30303);
        InstanceOptions opt;
        opt.max_rank = 3;
        for (int t = 0; t < 100; ++t) {
            auto sys = random_local_system(rng, opt);
            auto base = global_h(sys, cfg);
            auto a = analyze_cover(sys, CoveringDatum::trivial(sys.surface), cfg);
            for (const CohomologyReport* rep : {&a.extension_of_pullback, &a.pullback_of_extension})
                if (rep->h0 != base.h0 || rep->h1 != base.h1 || rep->h2 != base.h2) {
                    details = "instance " + std::to_string(t);
                    return false;
                }
        }
        return true;
    });

    // 4. Parabolic-cocycle oracle agreement.
    r.criterion(4, "global h1 equals the parabolic cocycle oracle", [&](std::string& details) {
        SurfaceData surf;
        surf.genus = 1;
        surf.punctures = {"p1"};
        LocalSystem<G> worked;
        worked.surface = surf;
        worked.n = 2;
        Matrix<G> a = Matrix<G>::identity(2), b = Matrix<G>::identity(2);
        a(0, 1) = G(1);
        b(0, 0) = G(2);
        Matrix<G> comm = a * b * inverse(a) * inverse(b);
        worked.mats = {a, b, inverse(comm)};
        auto rep = global_h(worked, cfg);
        if (!(rep.h0 == 0 && rep.h1 == 2 && rep.h2 == 1 && rep.chi == -1)) {
            details = "worked example dims wrong";
            return false;
        }
        if (parabolic_h1(worked, cfg) != 2) {
            details = "worked example oracle wrong";
            return false;
        }
        std::mt19937_64 rng(40404);
        InstanceOptions opt;
        for (int t = 0; t < 100; ++t) {
            auto sys = random_local_system(rng, opt);
            if (Rational(parabolic_h1(sys, cfg)) != global_h(sys, cfg).h1) {
                details = "instance " + std::to_string(t);
                return false;
            }
        }
        details = "worked (0,2,1) example plus 100 random instances";
        return true;
    });

    // 5. Model agreement for unipotent meridians; divergence otherwise.
    r.criterion(5, "stalk models agree on unipotent data and diverge on the worked instance",
                [&](std::string& details) {
                    std::mt19937_64 rng(50505);
                    InstanceOptions opt;
                    opt.unipotent_meridians = true;
                    opt.max_rank = 3;
                    opt.max_group_order = 12;
                    opt.max_induced_dim = 36;
                    for (int t = 0; t < 100; ++t) {
                        auto sys = random_local_system(rng, opt);
                        auto cover = random_cover(rng, sys.surface, sys.n, opt);
                        auto a = analyze_cover(sys, cover, cfg);
                        if (a.divergent || a.extension_of_pullback.h0 != a.pullback_of_extension.h0 ||
                            a.extension_of_pullback.h1 != a.pullback_of_extension.h1 ||
                            a.extension_of_pullback.h2 != a.pullback_of_extension.h2) {
                            details = "unipotent instance " + std::to_string(t) + " diverged";
                            return false;
                        }
                    }
                    auto surf = sphere3();
                    auto sys = rank1_system(surf, {-1, -1, 1});
                    auto a = analyze_cover(sys, z2_sphere_cover(surf), cfg);
                    details = "divergent example chi = " + format_rational(a.extension_of_pullback.chi) +
                              " vs " + format_rational(a.pullback_of_extension.chi);
                    return a.divergent && a.extension_of_pullback.chi == 1 && a.pullback_of_extension.chi == 0;
                });

    // 6. Weight filtration axioms and scaling invariance.
    r.criterion(6, "weight filtration axioms and W(cN) = W(N) scaling", [&](std::string& details) {
        std::mt19937_64 rng(60606);
        for (int t = 0; t < 100; ++t) {
            int n = 2 + static_cast<int>(rng() % 7);
            std::uniform_int_distribution<int> pick(-2, 2);
            Matrix<G> upper(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) upper(i, j) = G(pick(rng));
            Matrix<G> p = Matrix<G>::identity(n);
            for (int ops = 0; ops < 2 * n; ++ops) {
                int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
                if (i == j) continue;
                G c(pick(rng));
                for (int k = 0; k < n; ++k) p(i, k) += c * p(j, k);
            }
            Matrix<G> nil = p * upper * inverse(p);
            auto wf = weight_filtration(nil, cfg);
            if (!verify_weight_axioms(nil, wf, cfg.tau)) {
                details = "axioms failed at trial " + std::to_string(t);
                return false;
            }
            if (t % 10 == 0) {
                for (int c : {2, 3, 5}) {
                    auto scaled = weight_filtration(G(c) * nil, cfg);
                    if (scaled.k_min != wf.k_min || scaled.k_max != wf.k_max) {
                        details = "scaling changed the weight range";
                        return false;
                    }
                    for (int k = wf.k_min; k <= wf.k_max; ++k)
                        if (column_space_basis(scaled.w_basis(k, n)) != column_space_basis(wf.w_basis(k, n))) {
                            details = "scaling changed the flag at c = " + std::to_string(c);
                            return false;
                        }
                }
            }
        }
        return true;
    });

    // 7. Lattice dimension table.
    r.criterion(7, "square-integrability lattice dimensions (d0, d1)", [&](std::string& details) {
        auto d1 = lattice_dims(lt(2, {{Rational(0), {2}}}));
        auto d2 = lattice_dims(lt(1, {{Rational(0), {1}}}));
        auto d3 = lattice_dims(lt(1, {{Rational(-1, 2), {1}}}));
        std::ostringstream out;
        out << "2-block (" << d1.d0 << "," << d1.d1 << "), trivial (" << d2.d0 << "," << d2.d1 << "), T=-1 ("
            << d3.d0 << "," << d3.d1 << ")";
        details = out.str();
        return d1.d0 == 1 && d1.d1 == 0 && d2.d0 == 1 && d2.d1 == 0 && d3.d0 == 1 && d3.d1 == 1;
    });

    // 8. Mode-solver residuals, bound stability, obstruction region.
    r.criterion(8, "mode-solver residuals, constants, and the obstruction region", [&](std::string& details) {
        std::vector<LocalType> classes = {
            lt(1, {{Rational(-1, 2), {1}}}),
            lt(2, {{Rational(0), {2}}}),
            lt(1, {{Rational(0), {1}}}),
            lt(3, {{Rational(-1, 4), {2}}, {Rational(0), {1}}}),
        };
        double worst = 0;
        for (size_t c = 0; c < classes.size(); ++c) {
            auto rep = local_vanishing_probe(classes[c], 100, 8000 + c, cfg);
            worst = std::max(worst, rep.max_rel_residual);
            if (!rep.success) {
                details = "class " + std::to_string(c) + " solved " + std::to_string(rep.solved) + "/100";
                return false;
            }
            if (rep.max_bound_ratio > 1e-9 &&
                std::abs(rep.max_bound_ratio_refined - rep.max_bound_ratio) / rep.max_bound_ratio >= 0.10) {
                details = "bound constant unstable under resolution doubling";
                return false;
            }
        }
        // Obstruction dichotomy grid.
        QuadratureControl qc;
        for (int k = -4; k <= 3; ++k) {
            for (int g0 : {0, 1}) {
                ModeForm eta;
                eta.degree = 1;
                eta.frame = {Rational(0), k};
                eta.radius = 0.5;
                if (g0) eta.mode(0).c_dtheta = RadialFn::constant({1.0, 0.0});
                bool threw = false;
                try {
                    (void)solve_mode(eta, cfg, qc);
                } catch (const ObstructionError&) {
                    threw = true;
                }
                bool expected = g0 != 0 && k >= -1;
                if (threw != expected) {
                    details = "obstruction mismatch at k = " + std::to_string(k) + ", g0 = " + std::to_string(g0);
                    return false;
                }
            }
        }
        details = "max relative residual " + format_double(worst);
        return worst <= 1e-9;
    });

    // 9. Exact symbolic nabla inversion and residue reduction.
    r.criterion(9, "holomorphic primitive series inverts nabla exactly", [&](std::string& details) {
        std::mt19937_64 rng(90909);
        std::uniform_int_distribution<int> pick(-2, 2);
        for (int t = 0; t < 50; ++t) {
            int d = 1 + static_cast<int>(rng() % 4); // nilpotency <= 4
            Matrix<G> upper(d, d);
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) upper(i, j) = G(pick(rng));
            std::vector<G> e(d);
            for (int i = 0; i < d; ++i) e[i] = G(pick(rng));
            std::vector<G> coeffs;
            int len = 1 + static_cast<int>(rng() % 8); // series length <= 8
            for (int m = 0; m < len; ++m) coeffs.push_back(G(pick(rng)));
            Rational betas[4] = {Rational(0), Rational(-1, 2), Rational(-1, 3), Rational(-3, 4)};
            Rational beta = betas[rng() % 4];
            auto nu = nabla_primitive_series(coeffs, beta, upper, e, cfg);
            auto rhs = series_times_section(coeffs, 0, Rational(0), beta, upper, e);
            if (!(nabla_dz(nu) - rhs).is_zero()) {
                details = "inversion failed at trial " + std::to_string(t);
                return false;
            }
        }
        // Residue elimination against W_{-2} targets.
        Matrix<G> n3(3, 3);
        n3(0, 1) = G(1);
        n3(1, 2) = G(1);
        std::vector<G> bottom = {G(1), G(0), G(0)}; // weight -2 of the 3-chain
        auto red = residue_reduction(G(2), n3, bottom, cfg);
        auto pole = series_times_section({G(2)}, -1, Rational(0), Rational(0), n3, bottom);
        if (!(nabla_dz(red.primitive_term) - pole).is_zero()) {
            details = "residue reduction failed";
            return false;
        }
        return true;
    });

    // 10. Growth exponent recovery.
    r.criterion(10, "growth-exponent fit within (0.05, 0.15)", [&](std::string& details) {
        struct Case {
            double two_beta, k;
        };
        for (const Case& c : {Case{-1.0, 2.0}, Case{0.0, 0.0}, Case{0.0, 1.0}, Case{-0.5, -1.0}}) {
            std::vector<std::pair<double, double>> samples;
            for (int i = 0; i < 40; ++i) {
                double rr = std::pow(10.0, -8.0 + 6.0 * i / 39.0);
                samples.push_back({rr, std::pow(rr, c.two_beta) * std::pow(std::abs(std::log(rr)), c.k)});
            }
            auto fit = growth_fit(samples);
            if (std::abs(fit.two_beta - c.two_beta) >= 0.05 || std::abs(fit.k - c.k) >= 0.15) {
                details = "fit missed (" + format_double(c.two_beta) + ", " + format_double(c.k) + ")";
                return false;
            }
        }
        return true;
    });

    // 11. Iwaniec-Lutoborski constant.
    r.criterion(11, "planar Poincare constant equals 384 on the unit disk", [&](std::string& details) {
        double c = il_constant(2.0, M_PI / 3.0);
        details = "C = " + format_double(c);
        return std::abs(c - 384.0) < 1e-9;
    });

    // 12. Abelian family torsion on the torus.
    r.criterion(12, "torus character family: jump at the trivial character only", [&](std::string& details) {
        SurfaceData surf;
        surf.genus = 1;
        CoveringDatum cover;
        cover.base = surf;
        cover.abelian = AbelianRank{1};
        cover.abelian_images = {{1}, {0}};
        auto sys = LocalSystem<G>::trivial(surf);
        auto fam = character_family(sys, cover, cfg.samples, cfg.seed, cfg);
        auto torsion = torsion_report(fam);
        bool generic_ok = fam.generic == std::array<long, 3>{0, 0, 0};
        bool trivial_jump = !fam.samples.empty() && fam.samples[0].dims == std::array<long, 3>{1, 2, 1} &&
                            fam.samples[0].jump;
        bool vn_zero = fam.von_neumann == std::array<Rational, 3>{Rational(0), Rational(0), Rational(0)};
        bool only_trivial = torsion.torsion_present && torsion.jump_locus.size() == 1;
        details = "generic (0,0,0), trivial jump (1,2,1), von Neumann Betti 0";
        return generic_ok && trivial_jump && vn_zero && only_trivial;
    });

    // 13. Cone bookkeeping.
    r.criterion(13, "mapping cone Euler characteristic additivity", [&](std::string& details) {
        std::mt19937_64 rng(131313);
        std::vector<std::shared_ptr<const FiniteGroup>> groups = {
            std::make_shared<FiniteGroup>(FiniteGroup::cyclic(4)),
            std::make_shared<FiniteGroup>(FiniteGroup::symmetric(3)),
            std::make_shared<FiniteGroup>(FiniteGroup::cyclic(12)),
            std::make_shared<FiniteGroup>(
                FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))),
        };
        int done = 0;
        while (done < 50) {
            const auto& g = groups[done % groups.size()];
            int order = g->order();
            Matrix<G> d0 = random_equivariant_map<G>(rng, *g, 1, 1);
            GammaComplex<G> c0;
            c0.modules = {gamma_module_full<G>(g, 1), gamma_module_full<G>(g, 1)};
            c0.diffs = {d0};
            GammaComplex<G> c1 = c0;
            GammaChainMap<G> f;
            if (done % 3 == 0) {
                f.maps = {Matrix<G>(order, order), Matrix<G>(order, order)}; // zero chain map
            } else {
                Matrix<G> u0, u1;
                do { u0 = random_equivariant_map<G>(rng, *g, 1, 1); } while (rank(u0) != order);
                do { u1 = random_equivariant_map<G>(rng, *g, 1, 1); } while (rank(u1) != order);
                c1.diffs = {u1 * d0 * inverse(u0)};
                f.maps = {u0, u1};
            }
            auto cn = cone(c0, c1, f, cfg);
            if (gamma_euler_characteristic(cn) !=
                gamma_euler_characteristic(c1) - gamma_euler_characteristic(c0)) {
                details = "chi additivity failed at trial " + std::to_string(done);
                return false;
            }
            ++done;
        }
        // Cone of the identity is acyclic.
        auto z2 = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(2));
        GammaComplex<G> c;
        c.modules = {gamma_module_full<G>(z2, 1), gamma_module_full<G>(z2, 1)};
        c.diffs = {z2->regular_rep<G>(1) - Matrix<G>::identity(2)};
        GammaChainMap<G> idmap{{Matrix<G>::identity(2), Matrix<G>::identity(2)}};
        for (const Rational& h : complex_cohomology_dims(cone(c, c, idmap, cfg), cfg))
            if (h != 0) {
                details = "cone of identity not acyclic";
                return false;
            }
        return true;
    });

    // 14. Skyscraper summand.
    r.criterion(14, "skyscraper summands concentrate in degree zero and add", [&](std::string& details) {
        auto cover = CoveringDatum::trivial(sphere3());
        SkyscraperDatum one;
        one.points = {{"p1", 3, {}}};
        SkyscraperDatum two;
        two.points = {{"p1", 1, {}}, {"p2", 2, {}}};
        SkyscraperDatum empty;
        auto r1 = skyscraper_summand(one, cover);
        auto r2 = skyscraper_summand(two, cover);
        auto r0 = skyscraper_summand(empty, cover);
        details = "dims " + format_rational(r1.h0) + " and " + format_rational(r2.h0);
        return r1.h0 == 3 && r1.h1 == 0 && r1.h2 == 0 && r2.h0 == 3 && r2.h1 == 0 && r2.h2 == 0 && r0.h0 == 0 &&
               r1.h0 + r0.h0 == r2.h0;
    });

    return r.results;
}

} // namespace l2c
