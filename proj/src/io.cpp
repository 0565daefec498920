#include "l2curve/io.hpp"

#include "l2curve/acceptance.hpp"
#include "l2curve/disk.hpp"
#include "l2curve/probe.hpp"

#include <chrono>
#include <sstream>

namespace l2c {

using nlohmann::json;

std::string rational_to_string(const Rational& r) { return format_rational(r); }

namespace {

Complex scalar_to_complex(const json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_string()) return parse_gaussian(v.get<std::string>()).to_complex();
    throw InputError("bad scalar at " + where);
}

GaussianRational scalar_to_exact(const json& v, const std::string& where) {
    if (v.is_number_integer()) return GaussianRational(Rational(v.get<long>()));
    if (v.is_string()) return parse_gaussian(v.get<std::string>());
    if (v.is_number_float())
        throw InputError("decimal scalar in exact backend at " + where + " (use \"p/q\" or switch to float)");
    throw InputError("bad scalar at " + where);
}

std::string generator_label(const SurfaceData& surf, int index) {
    int g = surf.genus;
    if (index < 2 * g) return (index % 2 == 0 ? "a" : "b") + std::to_string(index / 2 + 1);
    return "c" + std::to_string(index - 2 * g + 1);
}

template <class K>
Matrix<K> parse_matrix(const json& rows, int n, const std::string& where,
                       K (*cell)(const json&, const std::string&)) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw InputError("matrix at " + where + " must have " + std::to_string(n) + " rows");
    Matrix<K> m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("matrix at " + where + " must be " + std::to_string(n) + "x" + std::to_string(n));
        for (int j = 0; j < n; ++j)
            m(i, j) = cell(row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

std::shared_ptr<const FiniteGroup> parse_group(const json& g) {
    std::string type = g.value("type", "cayley");
    if (type == "cayley") {
        std::vector<std::vector<int>> table = g.at("table").get<std::vector<std::vector<int>>>();
        return std::make_shared<FiniteGroup>(FiniteGroup::from_table(std::move(table)));
    }
    if (type == "perms") {
        int degree = g.at("degree").get<int>();
        auto perms = g.at("perms").get<std::vector<std::vector<int>>>();
        return std::make_shared<FiniteGroup>(FiniteGroup::from_permutations(degree, perms));
    }
    if (type == "cyclic") return std::make_shared<FiniteGroup>(FiniteGroup::cyclic(g.at("n").get<int>()));
    if (type == "symmetric") return std::make_shared<FiniteGroup>(FiniteGroup::symmetric(g.at("n").get<int>()));
    throw InputError("unknown group type: " + type);
}

json frame_json(const FrameWeight& f) {
    return json{{"beta", rational_to_string(f.beta)}, {"k", f.k}};
}

RadialFn parse_radial(const json& terms, const std::string& where) {
    RadialFn f;
    if (!terms.is_array()) throw InputError("radial function at " + where + " must be an array of terms");
    for (const auto& t : terms) {
        Rational a(0);
        if (t.contains("a")) {
            if (t["a"].is_number_integer())
                a = Rational(t["a"].get<long>());
            else
                a = parse_gaussian(t["a"].get<std::string>()).re;
        }
        f = f + RadialFn::monomial(a, t.value("b", 0), scalar_to_complex(t.value("c", json(1.0)), where));
    }
    return f;
}

json radial_json(const RadialFn& f) {
    json out = json::array();
    for (const auto& t : f.terms)
        out.push_back({{"a", rational_to_string(t.a)}, {"b", t.b}, {"c", format_complex(t.c)}});
    return out;
}

} // namespace

int InputDocument::rank() const {
    if (system_exact) return system_exact->n;
    if (system_float) return system_float->n;
    return 0;
}

InputDocument parse_input(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("syntax error: ") + e.what());
    }

    InputDocument out;
    if (doc.contains("config")) {
        const json& c = doc["config"];
        std::string backend = c.value("backend", "exact");
        if (backend == "exact")
            out.backend = Backend::exact;
        else if (backend == "float")
            out.backend = Backend::floating;
        else
            throw InputError("unknown backend: " + backend);
        out.config.tau = c.value("tolerance", out.config.tau);
        out.config.seed = c.value("seed", out.config.seed);
        out.config.samples = c.value("samples", out.config.samples);
        out.config.order_cap = c.value("order_cap", out.config.order_cap);
        out.config.mode_cap = c.value("mode_cap", out.config.mode_cap);
        out.config.series_cap = c.value("series_cap", out.config.series_cap);
    }

    if (!doc.contains("surface")) throw InputError("missing surface block");
    out.surface.genus = doc["surface"].value("genus", 0);
    if (out.surface.genus < 0) throw InputError("negative genus");
    if (doc["surface"].contains("punctures")) {
        if (doc["surface"]["punctures"].is_number_integer()) {
            int s = doc["surface"]["punctures"].get<int>();
            for (int p = 0; p < s; ++p) out.surface.punctures.push_back("p" + std::to_string(p + 1));
        } else {
            out.surface.punctures = doc["surface"]["punctures"].get<std::vector<std::string>>();
        }
    }

    if (doc.contains("system")) {
        const json& sys = doc["system"];
        int n = sys.at("rank").get<int>();
        if (n <= 0) throw InputError("system rank must be positive");
        const json& mats = sys.at("matrices");
        auto fetch = [&](int index) -> const json& {
            std::string label = generator_label(out.surface, index);
            if (mats.is_object()) {
                if (!mats.contains(label)) throw InputError("missing matrix for generator " + label);
                return mats[label];
            }
            if (!mats.is_array() || static_cast<int>(mats.size()) != out.surface.generator_count())
                throw InputError("matrices must list one entry per generator");
            return mats[index];
        };
        NumericConfig cfg = out.config;
        if (out.backend == Backend::exact) {
            LocalSystem<GaussianRational> s;
            s.surface = out.surface;
            s.n = n;
            for (int i = 0; i < out.surface.generator_count(); ++i)
                s.mats.push_back(
                    parse_matrix<GaussianRational>(fetch(i), n, generator_label(out.surface, i), scalar_to_exact));
            validate_local_system(s, cfg);
            out.system_exact = std::move(s);
        } else {
            LocalSystem<Complex> s;
            s.surface = out.surface;
            s.n = n;
            for (int i = 0; i < out.surface.generator_count(); ++i)
                s.mats.push_back(
                    parse_matrix<Complex>(fetch(i), n, generator_label(out.surface, i), scalar_to_complex));
            validate_local_system(s, cfg);
            out.system_float = std::move(s);
        }
    }

    if (doc.contains("cover")) {
        const json& cov = doc["cover"];
        CoveringDatum c;
        c.base = out.surface;
        const json& grp = cov.at("group");
        if (grp.value("type", "") == "abelian") {
            c.abelian = AbelianRank{grp.at("rank").get<int>()};
            c.abelian_images = cov.at("images").get<std::vector<std::vector<long>>>();
        } else {
            c.group = parse_group(grp);
            c.images = cov.at("images").get<std::vector<int>>();
        }
        validate_covering(c);
        out.cover = std::move(c);
    }

    if (doc.contains("skyscraper")) {
        SkyscraperDatum s;
        for (const auto& [key, value] : doc["skyscraper"].items()) {
            SkyscraperPoint point;
            point.label = key;
            if (value.is_number_integer()) {
                point.dim = value.get<int>();
            } else {
                point.dim = value.at("dim").get<int>();
                if (value.contains("hodge"))
                    point.hodge_tags = value["hodge"].get<std::vector<std::pair<int, int>>>();
            }
            s.points.push_back(std::move(point));
        }
        out.skyscraper = std::move(s);
    }

    if (doc.contains("experiments")) out.experiments = doc["experiments"];
    return out;
}

nlohmann::json render_input(const InputDocument& doc) {
    json out;
    out["config"] = {{"backend", doc.backend == Backend::exact ? "exact" : "float"},
                     {"tolerance", doc.config.tau},
                     {"seed", doc.config.seed},
                     {"samples", doc.config.samples},
                     {"order_cap", doc.config.order_cap},
                     {"mode_cap", doc.config.mode_cap},
                     {"series_cap", doc.config.series_cap}};
    out["surface"] = {{"genus", doc.surface.genus}, {"punctures", doc.surface.punctures}};
    auto matrix_rows = [&](int index) {
        json rows = json::array();
        int n = doc.rank();
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) {
                if (doc.system_exact)
                    row.push_back(format_gaussian((*doc.system_exact).mats[index](i, j)));
                else
                    row.push_back(format_complex((*doc.system_float).mats[index](i, j)));
            }
            rows.push_back(row);
        }
        return rows;
    };
    if (doc.has_system()) {
        json mats;
        for (int i = 0; i < doc.surface.generator_count(); ++i)
            mats[generator_label(doc.surface, i)] = matrix_rows(i);
        out["system"] = {{"rank", doc.rank()}, {"matrices", mats}};
    }
    if (doc.cover) {
        json cov;
        if (doc.cover->is_finite()) {
            cov["group"] = {{"type", "cayley"}, {"table", doc.cover->group->table()}};
            cov["images"] = doc.cover->images;
        } else {
            cov["group"] = {{"type", "abelian"}, {"rank", doc.cover->abelian->d}};
            cov["images"] = doc.cover->abelian_images;
        }
        out["cover"] = cov;
    }
    if (doc.skyscraper) {
        json sky;
        for (const auto& point : doc.skyscraper->points) {
            if (point.hodge_tags.empty()) {
                sky[point.label] = point.dim;
            } else {
                sky[point.label] = {{"dim", point.dim}, {"hodge", point.hodge_tags}};
            }
        }
        out["skyscraper"] = sky;
    }
    if (!doc.experiments.is_null()) out["experiments"] = doc.experiments;
    return out;
}

json report_json(const CohomologyReport& r) {
    return json{{"h0", rational_to_string(r.h0)}, {"h1", rational_to_string(r.h1)},
                {"h2", rational_to_string(r.h2)}, {"chi", rational_to_string(r.chi)},
                {"normalization", to_string(r.normalization)}, {"model", to_string(r.model)}};
}

namespace {

std::string report_line(const json& r) {
    std::ostringstream out;
    out << "(h0, h1, h2) = (" << r["h0"].get<std::string>() << ", " << r["h1"].get<std::string>() << ", "
        << r["h2"].get<std::string>() << "), chi = " << r["chi"].get<std::string>() << "  ["
        << r["model"].get<std::string>() << ", " << r["normalization"].get<std::string>() << "]";
    return out.str();
}

// Dispatches one command with a system in hand (exact or float path).
template <class K>
json run_system_command(const LocalSystem<K>& sys, const InputDocument& doc, const std::string& command,
                        std::ostringstream& text) {
    const NumericConfig& cfg = doc.config;
    json payload;
    if (command == "analyze") {
        CohomologyReport r = global_h(sys, cfg);
        int oracle = parabolic_h1(sys, cfg);
        payload["global"] = report_json(r);
        payload["parabolic_h1"] = oracle;
        payload["oracle_agrees"] = Rational(oracle) == r.h1;
        text << "global cohomology of j_*V:\n  " << report_line(payload["global"]) << "\n";
        text << "parabolic cocycle oracle h1 = " << oracle
             << (payload["oracle_agrees"].get<bool>() ? " (agrees)" : " (DISAGREES)") << "\n";
        if (!payload["oracle_agrees"].get<bool>())
            throw InternalError("parabolic oracle disagrees with global h1");
        return payload;
    }
    if (command == "cover" || command == "riemann-hurwitz") {
        if (!doc.cover) throw InputError("command needs a cover block");
        if (!doc.cover->is_finite()) throw InputError("command needs a finite cover (use `family` for Z^d)");
        CoverAnalysis a = analyze_cover(sys, *doc.cover, cfg);
        payload["invariants"] = {{"n_p", a.invariants.n_p},
                                 {"punctures_upstairs", *a.invariants.punctures_upstairs},
                                 {"euler_upstairs", *a.invariants.euler_upstairs},
                                 {"genus_upstairs", *a.invariants.genus_upstairs}};
        payload["extensionOfPullback"] = report_json(a.extension_of_pullback);
        payload["pullbackOfExtension"] = report_json(a.pullback_of_extension);
        payload["q_dims"] = a.q_dims;
        payload["base_stalks"] = a.base_stalks;
        payload["big_stalks"] = a.big_stalks;
        payload["models_diverge"] = a.divergent;
        text << "covering invariants: n_p = [";
        for (size_t i = 0; i < a.invariants.n_p.size(); ++i)
            text << (i ? ", " : "") << a.invariants.n_p[i];
        text << "], s~ = " << *a.invariants.punctures_upstairs << ", chi(X~) = " << *a.invariants.euler_upstairs
             << ", g~ = " << *a.invariants.genus_upstairs << "\n";
        text << "extension-of-pullback model:\n  " << report_line(payload["extensionOfPullback"]) << "\n";
        text << "pullback-of-extension model:\n  " << report_line(payload["pullbackOfExtension"]) << "\n";
        text << (a.divergent ? "stalk models DIVERGE (see q_dims)\n" : "stalk models agree\n");
        if (command == "riemann-hurwitz") {
            RiemannHurwitzRecord rec = riemann_hurwitz_check(sys, *doc.cover, cfg);
            payload["riemann_hurwitz"] = {{"lhs", rational_to_string(rec.lhs)},
                                          {"rhs", rational_to_string(rec.rhs)},
                                          {"equal", rec.equal}};
            text << "L2 Riemann-Hurwitz: lhs = " << rational_to_string(rec.lhs)
                 << ", rhs = " << rational_to_string(rec.rhs) << (rec.equal ? " (equal)" : " (UNEQUAL)") << "\n";
            if (!rec.equal) throw InternalError("Riemann-Hurwitz identity failed");
        }
        return payload;
    }
    if (command == "weights" || command == "lattices") {
        payload["punctures"] = json::array();
        for (int p = 0; p < sys.surface.s(); ++p) {
            LocalType t = local_type(sys.meridian(p), cfg);
            json entry;
            entry["puncture"] = sys.surface.punctures[p];
            json parts = json::array();
            for (const auto& part : t.parts)
                parts.push_back({{"alpha", rational_to_string(part.alpha.value)}, {"blocks", part.blocks}});
            entry["local_type"] = parts;
            text << "puncture " << sys.surface.punctures[p] << ":\n";
            if (command == "weights") {
                json growth = json::array();
                for (const auto& e : growth_exponents(t))
                    growth.push_back(
                        {{"beta", rational_to_string(e.beta.value)}, {"k", e.k}, {"multiplicity", e.multiplicity}});
                entry["growth_exponents"] = growth;
                entry["local_h0"] = local_h0(t);
                json graded = json::object();
                for (const auto& part : t.parts) {
                    json per_k = json::object();
                    for (const auto& [k, d] : graded_weight_dims(part.blocks)) per_k[std::to_string(k)] = d;
                    graded[rational_to_string(part.alpha.value)] = per_k;
                }
                entry["graded_weight_dims"] = graded;
                for (const auto& part : t.parts) {
                    text << "  alpha = " << rational_to_string(part.alpha.value) << ", blocks [";
                    for (size_t i = 0; i < part.blocks.size(); ++i) text << (i ? ", " : "") << part.blocks[i];
                    text << "]\n";
                }
                text << "  local h0 = " << local_h0(t) << "\n";
            } else {
                LatticeDims d = lattice_dims(t);
                entry["lattice_dims"] = {{"d0", d.d0}, {"d1", d.d1}, {"n", d.n}};
                text << "  (d0, d1) = (" << d.d0 << ", " << d.d1 << ") of n = " << d.n << "\n";
            }
            payload["punctures"].push_back(entry);
        }
        return payload;
    }
    if (command == "family") {
        if (!doc.cover) throw InputError("family needs an abelian cover block");
        CharacterFamily fam = character_family(sys, *doc.cover, cfg.samples, cfg.seed, cfg);
        TorsionReport torsion = torsion_report(fam);
        payload["generic"] = fam.generic;
        json vn = json::array();
        for (const auto& v : fam.von_neumann) vn.push_back(rational_to_string(v));
        payload["von_neumann"] = vn;
        payload["torsion_present"] = torsion.torsion_present;
        json jumps = json::array();
        for (const auto& s : torsion.jump_locus) jumps.push_back({{"theta", s.theta}, {"dims", s.dims}});
        payload["jump_locus"] = jumps;
        payload["samples_evaluated"] = fam.samples.size();
        text << "generic dims = (" << fam.generic[0] << ", " << fam.generic[1] << ", " << fam.generic[2]
             << "), von Neumann dims likewise; " << (torsion.torsion_present ? "torsion present at " : "no torsion among ")
             << (torsion.torsion_present ? std::to_string(torsion.jump_locus.size()) + " sampled character(s)"
                                         : std::to_string(fam.samples.size()) + " samples")
             << "\n";
        return payload;
    }
    throw InputError("unknown command: " + command);
}

json run_diskmode(const InputDocument& doc, std::ostringstream& text) {
    const NumericConfig& cfg = doc.config;
    QuadratureControl qc;
    json results = json::array();
    if (!doc.experiments.is_array()) throw InputError("diskmode needs an experiments array");
    for (const auto& exp : doc.experiments) {
        std::string kind = exp.value("kind", "");
        json entry{{"kind", kind}};
        if (kind == "solve-mode") {
            ModeForm eta;
            eta.degree = 1;
            eta.frame.beta = parse_gaussian(exp.value("beta", "0")).re;
            eta.frame.k = exp.value("k", 0);
            eta.radius = exp.value("R", 0.5);
            for (const auto& m : exp.at("modes")) {
                int n = m.value("n", 0);
                if (m.contains("g")) eta.mode(n).c_dtheta = parse_radial(m["g"], "mode g");
                if (m.contains("f")) eta.mode(n).c_dr = parse_radial(m["f"], "mode f");
            }
            SolveModeResult r = solve_mode(eta, cfg, qc);
            entry["frame"] = frame_json(eta.frame);
            entry["input_norm"] = r.input_norm.value;
            entry["primitive_norm"] = r.primitive_norm.value;
            entry["residual_norm"] = r.residual_norm.value;
            entry["bound_ratio"] = r.bound_ratio;
            json primitive = json::array();
            for (const auto& m : r.primitive.modes)
                primitive.push_back({{"n", m.n}, {"h", radial_json(m.c0)}});
            entry["primitive"] = primitive;
            text << "solve-mode: |eta| = " << format_double(r.input_norm.value)
                 << ", |nu| = " << format_double(r.primitive_norm.value)
                 << ", |residual| = " << format_double(r.residual_norm.value) << ", K = "
                 << format_double(r.bound_ratio) << "\n";
        } else if (kind == "dbar") {
            FrameWeight frame{parse_gaussian(exp.value("beta", "0")).re, exp.value("k", 0)};
            Rational a = parse_gaussian(exp.value("a", "0")).re;
            DbarResult r = dbar_mode_solve(scalar_to_complex(exp.value("coeff", json(1.0)), "dbar"), a,
                                           exp.value("n", 0), frame, exp.value("R", 0.5), cfg, qc);
            entry["bound_ratio"] = r.bound_ratio;
            json sol = json::array();
            for (const auto& m : r.solution.modes) sol.push_back({{"n", m.n}, {"g", radial_json(m.c0)}});
            entry["solution"] = sol;
            text << "dbar: ratio |g|/|f dzbar| = " << format_double(r.bound_ratio) << "\n";
        } else if (kind == "il-constant") {
            double c = il_constant(exp.value("diameter", 2.0), exp.value("dist_integral", M_PI / 3));
            entry["constant"] = c;
            text << "Iwaniec-Lutoborski constant = " << format_double(c) << "\n";
        } else if (kind == "growth-fit") {
            std::vector<std::pair<double, double>> samples;
            for (const auto& s : exp.at("samples")) samples.push_back({s[0].get<double>(), s[1].get<double>()});
            GrowthFit fit = growth_fit(samples);
            entry["two_beta"] = fit.two_beta;
            entry["k"] = fit.k;
            text << "growth fit: 2 beta = " << format_double(fit.two_beta) << ", k = " << format_double(fit.k)
                 << "\n";
        } else if (kind == "vanishing-probe") {
            std::vector<LocalPart> parts;
            int n = 0;
            for (const auto& p : exp.at("local_type")) {
                LocalPart part;
                part.alpha = RotationNumber(parse_gaussian(p.at("alpha").get<std::string>()).re);
                part.blocks = p.at("blocks").get<std::vector<int>>();
                for (int b : part.blocks) n += b;
                parts.push_back(std::move(part));
            }
            LocalType t = make_local_type(n, std::move(parts));
            ProbeReport rep = local_vanishing_probe(t, exp.value("trials", 50), cfg.seed, cfg);
            entry["trials"] = rep.trials;
            entry["solved"] = rep.solved;
            entry["max_rel_residual"] = rep.max_rel_residual;
            entry["max_bound_ratio"] = rep.max_bound_ratio;
            entry["max_bound_ratio_refined"] = rep.max_bound_ratio_refined;
            entry["success"] = rep.success;
            text << "vanishing probe: " << rep.solved << "/" << rep.trials
                 << " solved, max rel residual = " << format_double(rep.max_rel_residual)
                 << ", max K = " << format_double(rep.max_bound_ratio) << "\n";
        } else {
            throw InputError("unknown experiment kind: " + kind);
        }
        results.push_back(entry);
    }
    return json{{"experiments", results}};
}

} // namespace

Report run(const InputDocument& doc, const std::string& command, bool strict) {
    auto started = std::chrono::steady_clock::now();
    Report rep;
    rep.command = command;
    std::ostringstream text;
    json payload;

    try {
        if (command == "diskmode") {
            payload = run_diskmode(doc, text);
        } else if (command == "selftest") {
            auto results = run_acceptance(doc.config, &text);
            json arr = json::array();
            bool all = true;
            for (const auto& r : results) {
                arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
                all = all && r.passed;
            }
            payload = json{{"criteria", arr}, {"all_passed", all}};
            if (!all) rep.exit_code = 2;
        } else if (doc.system_exact) {
            payload = run_system_command(*doc.system_exact, doc, command, text);
        } else if (doc.system_float) {
            payload = run_system_command(*doc.system_float, doc, command, text);
        } else if (doc.skyscraper && command == "analyze") {
            CoveringDatum cover = doc.cover ? *doc.cover : CoveringDatum::trivial(doc.surface);
            CohomologyReport r = skyscraper_summand(*doc.skyscraper, cover);
            payload["skyscraper"] = report_json(r);
            text << "skyscraper summand:\n  " << report_line(payload["skyscraper"]) << "\n";
        } else {
            throw InputError("document has no system block for command " + command);
        }
    } catch (const InternalError&) {
        throw;
    }

    if (doc.skyscraper && doc.has_system() && (command == "analyze" || command == "cover")) {
        CoveringDatum cover = doc.cover ? *doc.cover : CoveringDatum::trivial(doc.surface);
        CohomologyReport r = skyscraper_summand(*doc.skyscraper, cover);
        payload["skyscraper"] = report_json(r);
        text << "skyscraper summand:\n  " << report_line(payload["skyscraper"]) << "\n";
    }

    if (strict && payload.contains("models_diverge") && payload["models_diverge"].get<bool>())
        rep.exit_code = 3;

    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
    rep.machine = json{{"command", command},
                       {"config",
                        {{"backend", doc.backend == Backend::exact ? "exact" : "float"},
                         {"tolerance", doc.config.tau},
                         {"seed", doc.config.seed},
                         {"samples", doc.config.samples},
                         {"order_cap", doc.config.order_cap},
                         {"mode_cap", doc.config.mode_cap},
                         {"series_cap", doc.config.series_cap}}},
                       {"result", payload},
                       {"elapsed_ms", elapsed.count()}};
    rep.text = "command: " + command + "\n" + text.str();
    return rep;
}

} // namespace l2c
