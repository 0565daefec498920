#pragma once

#include "l2curve/cohomology.hpp"
#include "l2curve/gamma.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace l2c {

enum class Backend { exact, floating };

// Parsed and validated input document.  The local system is materialized in
// the backend the config selects; reports hold exact rationals either way.
struct InputDocument {
    Backend backend = Backend::exact;
    NumericConfig config;
    SurfaceData surface;
    std::optional<LocalSystem<GaussianRational>> system_exact;
    std::optional<LocalSystem<Complex>> system_float;
    std::optional<CoveringDatum> cover;
    std::optional<SkyscraperDatum> skyscraper;
    nlohmann::json experiments; // disk-analysis experiment descriptors

    bool has_system() const { return system_exact.has_value() || system_float.has_value(); }
    int rank() const;
};

// Parses and eagerly validates; throws InputError with positions
// ("matrix at generator c2 ..."), NotQuasiUnitary, etc.
InputDocument parse_input(const std::string& text);

// Inverse of parse_input up to field normalization; re-parsing the rendering
// yields an identical document.
nlohmann::json render_input(const InputDocument& doc);

struct Report {
    std::string command;
    nlohmann::json machine; // full payload
    std::string text;       // human rendering of the same numbers
    int exit_code = 0;
};

// command: analyze | cover | riemann-hurwitz | weights | lattices | diskmode
//          | family | selftest
Report run(const InputDocument& doc, const std::string& command, bool strict = false);

// Serialization helpers shared with reports.
std::string rational_to_string(const Rational& r);
nlohmann::json report_json(const CohomologyReport& r);

} // namespace l2c
