#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvspec/neumann.hpp"
#include "tvspec/report.hpp"

namespace tvspec {

/// Declarative scenario: one space, one operator, a task list. Parsed from
/// the JSON scenario format (schema id tvspec-scenario-v1, documented in the
/// repository README).
struct Scenario {
    struct Task {
        enum class Type { Classify, Radii, Neumann, SpectrumProbe, GalleryCheck };
        Type type = Type::Classify;
        std::vector<Complex> lambdas;       // neumann / spectrum_probe grids
        std::string topology = "pointwise"; // neumann monitor topology
        std::string gallery_id;             // gallery_check
        int probe_count = 8;                // radii strong probes
    };

    std::string name = "scenario";
    std::uint64_t seed = 1;
    long depth = 200;
    int level = 3;
    SpaceModel space = SpaceModel::full_sequence();
    OperatorPtr op; // absent for pure gallery scenarios
    std::vector<Task> tasks;
};

/// Throws ConfigError with field diagnostics on malformed input.
Scenario scenario_from_json_text(const std::string& text);
Scenario scenario_from_file(const std::string& path);

struct RunResult {
    JsonValue report;
    bool all_passed = true;
    std::string radius_csv;
    std::string neumann_csv;
    std::string human_text;
    double elapsed_ms = 0; // human summary only; kept out of the JSON
};

RunResult run_scenario(const Scenario& scenario);

/// format is one of json, csv-tables, human-text; files land under out_dir
/// with the scenario name as stem.
void emit_result(const RunResult& result, const std::string& format, const std::string& out_dir,
                 const std::string& stem);

} // namespace tvspec
