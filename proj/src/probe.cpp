#include "l2curve/probe.hpp"

#include <algorithm>
#include <cmath>

namespace l2c {

namespace {
const Complex kI{0.0, 1.0};
const Complex kMu = 1.0 / (2.0 * M_PI * kI); // 1/(2 pi i)
} // namespace

std::vector<ModelComponent> chain_model(const LocalType& t) {
    std::vector<ModelComponent> model;
    for (const auto& part : t.parts) {
        for (int m : part.blocks) {
            int base = static_cast<int>(model.size());
            for (int l = 0; l < m; ++l) {
                ModelComponent c;
                c.beta = part.alpha.value;
                c.weight = m - 1 - 2 * l;
                c.next = l + 1 < m ? base + l + 1 : -1;
                c.prev = l > 0 ? base + l - 1 : -1;
                model.push_back(c);
            }
        }
    }
    return model;
}

ChainForm ChainForm::zero(const std::vector<ModelComponent>& model, int degree, double radius) {
    ChainForm f;
    f.degree = degree;
    f.radius = radius;
    for (const auto& c : model) {
        ModeForm m;
        m.degree = degree;
        m.frame = {c.beta, c.weight};
        m.radius = radius;
        f.comps.push_back(std::move(m));
    }
    return f;
}

bool ChainForm::is_zero(double eps) const {
    for (const auto& c : comps)
        if (!c.is_zero(eps)) return false;
    return true;
}

ChainForm chain_differential(const std::vector<ModelComponent>& model, const ChainForm& phi) {
    ChainForm out = ChainForm::zero(model, phi.degree + 1, phi.radius);
    for (size_t i = 0; i < model.size(); ++i) {
        const ModeForm& src = phi.comps[i];
        // Graded part (connection d + beta dz/z on the frame line).
        ModeForm graded = graded_differential(src);
        for (const auto& m : graded.modes) {
            ModeChannels& t = out.comps[i].mode(m.n);
            t.c_dr = t.c_dr + m.c_dr;
            t.c_dtheta = t.c_dtheta + m.c_dtheta;
            t.c_area = t.c_area + m.c_area;
        }
        // Chain coupling mu dz/z onto the next component.
        int nx = model[i].next;
        if (nx < 0) continue;
        for (const auto& m : src.modes) {
            ModeChannels& t = out.comps[nx].mode(m.n);
            if (phi.degree == 0) {
                // + mu h dz/z.
                t.c_dr = t.c_dr + m.c0.shifted(Rational(-1)).scaled(kMu);
                t.c_dtheta = t.c_dtheta + m.c0.scaled(kI * kMu);
            } else if (phi.degree == 1) {
                // - mu (omega ^ dz/z) = - mu (i f - g/r) dr ^ dtheta.
                t.c_area = t.c_area + m.c_dr.scaled(-kI * kMu) + m.c_dtheta.shifted(Rational(-1)).scaled(kMu);
            }
        }
    }
    return out;
}

WeightedNorm chain_norm(const ChainForm& phi, const QuadratureControl& qc) {
    double sq = 0.0;
    for (const auto& c : phi.comps) {
        WeightedNorm n = weighted_norm(c, qc);
        if (!n.finite) return {false, 0.0, 0.0};
        sq += n.squared;
    }
    return {true, std::sqrt(std::max(0.0, sq)), sq};
}

namespace {

// Subtraction helper: running -= chain_differential(correction).
void subtract_differential(const std::vector<ModelComponent>& model, ChainForm& running,
                           const ChainForm& correction) {
    ChainForm d = chain_differential(model, correction);
    for (size_t i = 0; i < running.comps.size(); ++i) running.comps[i] = running.comps[i] - d.comps[i];
}

// Weight-descending processing order: beta != 0 parts first, unipotent last.
std::vector<int> processing_order(const std::vector<ModelComponent>& model) {
    std::vector<int> order(model.size());
    for (size_t i = 0; i < model.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        bool ux = model[x].beta == 0, uy = model[y].beta == 0;
        if (ux != uy) return !ux; // non-unipotent parts first
        if (model[x].weight != model[y].weight) return model[x].weight > model[y].weight;
        return x < y;
    });
    return order;
}

} // namespace

CascadeResult cascade_solve(const std::vector<ModelComponent>& model, const ChainForm& eta,
                            const NumericConfig& cfg, const QuadratureControl& qc) {
    CascadeResult res;
    res.primitive = ChainForm::zero(model, eta.degree - 1, eta.radius);
    ChainForm running = eta;
    WeightedNorm input = chain_norm(eta, qc);
    double coeff_scale = 1e-300;
    for (const auto& c : eta.comps)
        for (const auto& m : c.modes)
            coeff_scale = std::max({coeff_scale, m.c0.max_coeff(), m.c_dr.max_coeff(), m.c_dtheta.max_coeff(),
                                    m.c_area.max_coeff()});

    for (int i : processing_order(model)) {
        ModeForm piece = running.comps[i];
        for (auto& m : piece.modes) {
            m.c0.combine();
            m.c_dr.combine();
            m.c_dtheta.combine();
            m.c_area.combine();
        }
        double eps = 1e-13 * coeff_scale;
        if (eta.degree == 1) {
            // Residue channel: constant dtheta zero-mode on a W_{-2}
            // component lifts through the chain predecessor.
            if (model[i].beta == 0 && model[i].weight <= -2) {
                if (const ModeChannels* m0 = piece.find_mode(0)) {
                    RadialFn g0 = m0->c_dtheta;
                    g0.combine();
                    Complex c{0.0, 0.0};
                    for (const auto& term : g0.terms)
                        if (term.a == 0 && term.b == 0) c = term.c;
                    if (std::abs(c) > eps) {
                        int p = model[i].prev;
                        if (p < 0) return res; // inconsistent model; unreachable for valid types
                        ChainForm lift = ChainForm::zero(model, 0, eta.radius);
                        lift.comps[p].mode(0).c0 = RadialFn::constant(c / (kI * kMu));
                        res.primitive.comps[p].mode(0).c0 =
                            res.primitive.comps[p].mode(0).c0 + lift.comps[p].mode(0).c0;
                        subtract_differential(model, running, lift);
                        piece = running.comps[i];
                    }
                }
            }
            ModeForm cleaned = piece;
            for (auto& m : cleaned.modes) {
                m.c_dr.terms.erase(std::remove_if(m.c_dr.terms.begin(), m.c_dr.terms.end(),
                                                  [&](const RadialTerm& t) { return std::abs(t.c) <= eps; }),
                                   m.c_dr.terms.end());
                m.c_dtheta.terms.erase(std::remove_if(m.c_dtheta.terms.begin(), m.c_dtheta.terms.end(),
                                                      [&](const RadialTerm& t) { return std::abs(t.c) <= eps; }),
                                       m.c_dtheta.terms.end());
            }
            SolveModeResult solved = solve_mode(cleaned, cfg, qc, /*allow_critical=*/true);
            ChainForm corr = ChainForm::zero(model, 0, eta.radius);
            corr.comps[i] = solved.primitive;
            res.primitive.comps[i] = res.primitive.comps[i] + solved.primitive;
            subtract_differential(model, running, corr);
        } else {
            ModeForm cleaned = piece;
            for (auto& m : cleaned.modes)
                m.c_area.terms.erase(std::remove_if(m.c_area.terms.begin(), m.c_area.terms.end(),
                                                    [&](const RadialTerm& t) { return std::abs(t.c) <= eps; }),
                                     m.c_area.terms.end());
            SolveModeResult solved = solve_mode_degree2(cleaned, cfg, qc, /*allow_critical=*/true);
            ChainForm corr = ChainForm::zero(model, 1, eta.radius);
            corr.comps[i] = solved.primitive;
            res.primitive.comps[i] = res.primitive.comps[i] + solved.primitive;
            subtract_differential(model, running, corr);
        }
    }

    res.residual = running;
    WeightedNorm rnorm = chain_norm(running, qc);
    WeightedNorm pnorm = chain_norm(res.primitive, qc);
    if (input.finite && input.value > 0) {
        res.rel_residual = rnorm.finite ? rnorm.value / input.value : 1.0;
        res.bound_ratio = pnorm.finite ? pnorm.value / input.value : -1.0;
    }
    res.solved = rnorm.finite && pnorm.finite && res.rel_residual <= cfg.tau;
    return res;
}

namespace {

Complex random_coeff(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

// Random closed chain form of the requested degree.
ChainForm random_closed(const std::vector<ModelComponent>& model, int degree, double radius,
                        std::mt19937_64& rng) {
    // Exact part: D of a random form one degree lower.
    ChainForm seed = ChainForm::zero(model, degree - 1, radius);
    for (size_t i = 0; i < model.size(); ++i) {
        if (rng() % 2) continue;
        int n = static_cast<int>(rng() % 5) - 2;
        Rational a(1 + static_cast<long>(rng() % 2));
        int b = static_cast<int>(rng() % 2);
        RadialFn f = RadialFn::monomial(a, b, random_coeff(rng));
        if (degree == 1) {
            seed.comps[i].mode(n).c0 = f;
        } else {
            if (rng() % 2)
                seed.comps[i].mode(n).c_dr = f;
            else
                seed.comps[i].mode(n).c_dtheta = f.shifted(Rational(1)); // keep the norm finite
        }
    }
    ChainForm eta = chain_differential(model, seed);

    // Closed non-exact pieces.
    for (size_t i = 0; i < model.size(); ++i) {
        if (degree == 1) {
            if (rng() % 2) {
                // Holomorphic piece z^m dz = r^m e^{i(m+1)theta} (dr + i r dtheta).
                int m = static_cast<int>(rng() % 3);
                Complex c = random_coeff(rng);
                eta.comps[i].mode(m + 1).c_dr =
                    eta.comps[i].mode(m + 1).c_dr + RadialFn::monomial(Rational(m), 0, c);
                eta.comps[i].mode(m + 1).c_dtheta =
                    eta.comps[i].mode(m + 1).c_dtheta + RadialFn::monomial(Rational(m + 1), 0, kI * c);
            }
            if (model[i].beta == 0 && model[i].weight <= -2 && rng() % 2) {
                // Residue piece c dz/z.
                Complex c = random_coeff(rng);
                eta.comps[i].mode(0).c_dr = eta.comps[i].mode(0).c_dr + RadialFn::monomial(Rational(-1), 0, c);
                eta.comps[i].mode(0).c_dtheta = eta.comps[i].mode(0).c_dtheta + RadialFn::constant(kI * c);
            }
        } else {
            if (rng() % 2) {
                int n = static_cast<int>(rng() % 5) - 2;
                Rational a(1 + static_cast<long>(rng() % 2));
                eta.comps[i].mode(n).c_area =
                    eta.comps[i].mode(n).c_area + RadialFn::monomial(a, static_cast<int>(rng() % 2), random_coeff(rng));
            }
        }
    }
    return eta;
}

} // namespace

ProbeReport local_vanishing_probe(const LocalType& t, int trials, std::uint64_t seed, const NumericConfig& cfg) {
    std::vector<ModelComponent> model = chain_model(t);
    QuadratureControl qc;
    QuadratureControl qc2 = qc;
    qc2.refine = 2;
    std::mt19937_64 rng(seed);
    ProbeReport rep;
    rep.trials = trials;
    double radius = 0.5;
    for (int trial = 0; trial < trials; ++trial) {
        int degree = 1 + static_cast<int>(trial % 2);
        ChainForm eta = random_closed(model, degree, radius, rng);
        if (eta.is_zero(0.0)) {
            ++rep.solved; // trivially solved
            continue;
        }
        CascadeResult res = cascade_solve(model, eta, cfg, qc);
        CascadeResult res2 = cascade_solve(model, eta, cfg, qc2);
        rep.max_rel_residual = std::max(rep.max_rel_residual, res.rel_residual);
        rep.max_bound_ratio = std::max(rep.max_bound_ratio, res.bound_ratio);
        rep.max_bound_ratio_refined = std::max(rep.max_bound_ratio_refined, res2.bound_ratio);
        if (res.solved) ++rep.solved;
    }
    rep.success = rep.solved == rep.trials;
    return rep;
}

} // namespace l2c
