#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "tvspec/errors.hpp"
#include "tvspec/gallery.hpp"
#include "tvspec/scenario.hpp"

using namespace tvspec;

int main(int argc, char** argv) {
    CLI::App app{"spectral radii, boundedness classification and resolvent series "
                 "for sequence-space operators"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    long depth = 200;
    int level = 3;
    app.add_option("--format", format, "json | csv-tables | human-text")->capture_default_str();
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--seed", seed, "rng seed")->capture_default_str();
    app.add_option("--depth", depth, "iterate depth")->capture_default_str();
    app.add_option("--level", level, "seminorm enumeration level")->capture_default_str();

    std::string scenario_path;
    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_path, "scenario json file")->required();

    CLI::App* gallery_cmd = app.add_subcommand("gallery", "run every registered example");
    CLI::App* list_cmd = app.add_subcommand("list", "list registered examples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& e : gallery())
                std::printf("%-32s %s\n", e.id, e.expectation);
            return 0;
        }
        if (gallery_cmd->parsed()) {
            bool all_passed = false;
            JsonValue report = run_full_gallery(seed, all_passed);
            if (format == "json") {
                write_text_file(out_dir + "/gallery.json", report.dump(2) + "\n");
                std::printf("wrote %s/gallery.json\n", out_dir.c_str());
            } else {
                // human summary either way; csv tables make no sense here
                for (const auto& e : report.find("entries")->items()) {
                    std::printf("%-32s %s\n", e.find("id")->as_str().c_str(),
                                e.find("passed")->as_bool() ? "pass" : "FAIL");
                }
            }
            std::printf("gallery: %s\n", all_passed ? "all examples pass" : "FAILURES");
            return all_passed ? 0 : 1;
        }
        if (run->parsed()) {
            Scenario scenario = scenario_from_file(scenario_path);
            scenario.seed = seed;
            scenario.depth = depth;
            scenario.level = level;
            RunResult result = run_scenario(scenario);
            emit_result(result, format, out_dir, scenario.name);
            std::printf("%s", result.human_text.c_str());
            return result.all_passed ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
