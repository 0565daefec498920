#include "l2curve/acceptance.hpp"
#include "l2curve/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"L2 cohomology of local systems on punctured Riemann surfaces and their branched covers"};

    std::string input_path;
    std::string command = "analyze";
    std::string backend;
    std::string format = "text";
    double tolerance = -1;
    std::uint64_t seed = 0;
    bool seed_set = false, samples_set = false;
    int samples = 0;
    bool strict = false;

    app.add_option("--input", input_path, "input document path ('-' for stdin)");
    app.add_option("--command", command,
                   "analyze | cover | riemann-hurwitz | weights | lattices | diskmode | family | selftest")
        ->check(CLI::IsMember(
            {"analyze", "cover", "riemann-hurwitz", "weights", "lattices", "diskmode", "family", "selftest"}));
    app.add_option("--backend", backend, "exact | float (overrides the document config)")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tolerance", tolerance, "float comparison tolerance tau");
    app.add_option("--seed", seed, "seed for stochastic entry points")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--samples", samples, "character-family sample count")->each([&](const std::string&) {
        samples_set = true;
    });
    app.add_flag("--strict", strict, "exit 3 when the two stalk models diverge");
    app.add_option("--format", format, "text | machine")->check(CLI::IsMember({"text", "machine"}));

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text;
        if (command == "selftest" && input_path.empty()) {
            text = R"({"surface": {"genus": 0, "punctures": []}})";
        } else if (input_path.empty()) {
            std::cerr << "error: --input is required (or '-' for stdin)\n";
            return 1;
        } else if (input_path == "-") {
            std::ostringstream buf;
            buf << std::cin.rdbuf();
            text = buf.str();
        } else {
            std::ifstream in(input_path);
            if (!in) {
                std::cerr << "error: cannot open " << input_path << "\n";
                return 1;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }

        // Flag overrides are applied to the raw document before validation so
        // the chosen backend parses the matrices.
        nlohmann::json doc = nlohmann::json::parse(text);
        if (!doc.contains("config")) doc["config"] = nlohmann::json::object();
        if (!backend.empty()) doc["config"]["backend"] = backend;
        if (tolerance >= 0) doc["config"]["tolerance"] = tolerance;
        if (seed_set) doc["config"]["seed"] = seed;
        if (samples_set) doc["config"]["samples"] = samples;

        l2c::InputDocument parsed = l2c::parse_input(doc.dump());
        l2c::Report report = l2c::run(parsed, command, strict);
        if (format == "machine")
            std::cout << report.machine.dump(2) << "\n";
        else
            std::cout << report.text;
        return report.exit_code;
    } catch (const l2c::InternalError& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
}
