#include "tvspec/scenario.hpp"

#include <chrono>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "tvspec/classify.hpp"
#include "tvspec/errors.hpp"
#include "tvspec/gallery.hpp"

namespace tvspec {

namespace {

using nlohmann::json;

SparseVector sparse_from_json(const json& j, const std::string& where) {
    // list of [index, re, im]
    SparseVector v;
    if (!j.is_array()) throw ConfigError(where + ": expected an array of [index, re, im]");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3) throw ConfigError(where + ": entry must be [index, re, im]");
        v.set(e[0].get<Index>(), LogScalar::from_complex(Complex(e[1].get<double>(), e[2].get<double>())));
    }
    return v;
}

WeightRule rule_from_json(const json& j) {
    std::string rule = j.value("rule", "unit");
    double param = j.value("param", 0.0);
    return WeightRule::by_name(rule, param);
}

const char* state_text(BoundednessVerdict::State s) {
    return s == BoundednessVerdict::Yes ? "yes" : s == BoundednessVerdict::No ? "no" : "unknown";
}

OperatorPtr operator_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": operator description must be an object");
    std::string kind = j.value("kind", "");
    if (kind == "diagonal") return OperatorRep::diagonal(rule_from_json(j));
    if (kind == "weighted_shift") {
        int offset = j.value("offset", 1);
        return OperatorRep::weighted_shift(offset, rule_from_json(j));
    }
    if (kind == "banded") {
        std::vector<std::pair<int, WeightRule>> bands;
        for (const auto& b : j.at("bands"))
            bands.emplace_back(b.at("offset").get<int>(), rule_from_json(b));
        return OperatorRep::banded(std::move(bands));
    }
    if (kind == "finite_rank") {
        std::vector<SparseVector> fs, ys;
        for (const auto& f : j.at("functionals")) fs.push_back(sparse_from_json(f, where + ".functionals"));
        for (const auto& y : j.at("ranges")) ys.push_back(sparse_from_json(y, where + ".ranges"));
        return OperatorRep::finite_rank(std::move(fs), std::move(ys));
    }
    if (kind == "identity") return OperatorRep::identity();
    if (kind == "zero") return OperatorRep::zero();
    if (kind == "scale") {
        Complex factor(j.at("factor").at(0).get<double>(), j.at("factor").at(1).get<double>());
        return OperatorRep::scale(LogScalar::from_complex(factor),
                                  operator_from_json(j.at("inner"), where + ".inner"));
    }
    if (kind == "sum" || kind == "product") {
        std::vector<OperatorPtr> parts;
        const char* field = kind == "sum" ? "terms" : "factors";
        for (const auto& t : j.at(field)) parts.push_back(operator_from_json(t, where + "." + field));
        return kind == "sum" ? OperatorRep::sum(std::move(parts))
                             : OperatorRep::product(std::move(parts));
    }
    throw ConfigError(where + ": unknown operator kind '" + kind + "'");
}

SpaceModel space_from_json(const json& j) {
    std::string model = j.value("model", "full_sequence");
    if (model == "full_sequence") return SpaceModel::full_sequence();
    if (model == "bounded_sequence") return SpaceModel::bounded_sequence();
    if (model == "c0_sequence") return SpaceModel::c0_sequence();
    if (model == "sup_norm_sequence") return SpaceModel::sup_norm_sequence();
    if (model == "single_norm") return SpaceModel::single_norm(j.value("dim", (Index)5));
    throw ConfigError("space.model: unknown model '" + model + "'");
}

std::vector<Complex> lambdas_from_json(const json& j, const std::string& where) {
    std::vector<Complex> out;
    for (const auto& l : j) {
        if (!l.is_array() || l.size() != 2) throw ConfigError(where + ": lambda must be [re, im]");
        out.emplace_back(l[0].get<double>(), l[1].get<double>());
    }
    return out;
}

} // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }
    std::string schema = j.value("schema", "");
    if (schema != "tvspec-scenario-v1")
        throw ConfigError("schema: expected 'tvspec-scenario-v1', got '" + schema + "'");

    Scenario s;
    s.name = j.value("name", "scenario");
    s.seed = j.value("seed", (std::uint64_t)1);
    s.depth = j.value("depth", 200l);
    s.level = j.value("level", 3);
    if (j.contains("space")) s.space = space_from_json(j.at("space"));
    if (j.contains("operator")) s.op = operator_from_json(j.at("operator"), "operator");

    if (j.contains("tasks")) {
        for (std::size_t i = 0; i < j.at("tasks").size(); ++i) {
            const json& tj = j.at("tasks")[i];
            const std::string where = "tasks[" + std::to_string(i) + "]";
            Scenario::Task t;
            std::string type = tj.value("type", "");
            if (type == "classify") t.type = Scenario::Task::Type::Classify;
            else if (type == "radii") t.type = Scenario::Task::Type::Radii;
            else if (type == "neumann") t.type = Scenario::Task::Type::Neumann;
            else if (type == "spectrum_probe") t.type = Scenario::Task::Type::SpectrumProbe;
            else if (type == "gallery_check") t.type = Scenario::Task::Type::GalleryCheck;
            else throw ConfigError(where + ".type: unknown task type '" + type + "'");
            if (tj.contains("lambdas")) t.lambdas = lambdas_from_json(tj.at("lambdas"), where);
            t.topology = tj.value("topology", "pointwise");
            t.gallery_id = tj.value("id", "");
            t.probe_count = tj.value("probes", 8);
            if (t.type == Scenario::Task::Type::GalleryCheck && t.gallery_id.empty())
                throw ConfigError(where + ": gallery_check needs an 'id'");
            if ((t.type == Scenario::Task::Type::Neumann ||
                 t.type == Scenario::Task::Type::SpectrumProbe) &&
                t.lambdas.empty())
                throw ConfigError(where + ": task needs a nonempty 'lambdas' grid");
            s.tasks.push_back(std::move(t));
        }
    }
    bool needs_op = false;
    for (const auto& t : s.tasks)
        needs_op |= t.type != Scenario::Task::Type::GalleryCheck;
    if (needs_op && !s.op) throw ConfigError("operator: required by the task list");
    return s;
}

Scenario scenario_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

namespace {

JsonValue extreal_json(const ExtReal& v) {
    if (v.is_infinite()) return JsonValue::str("inf");
    return JsonValue::real(v.value());
}

JsonValue verdict_json(const BoundednessVerdict& v) {
    JsonValue o = JsonValue::object();
    const char* s = v.state == BoundednessVerdict::Yes   ? "yes"
                    : v.state == BoundednessVerdict::No ? "no"
                                                         : "unknown";
    o.set("verdict", JsonValue::str(s));
    o.set("justification", JsonValue::str(v.justification));
    return o;
}

JsonValue class_verdict_json(const ClassVerdict& v) {
    JsonValue o = JsonValue::object();
    const char* s = v.state == ClassVerdict::In    ? "in"
                    : v.state == ClassVerdict::Out ? "out"
                                                    : "unknown";
    o.set("resolvent_membership", JsonValue::str(s));
    o.set("certified", JsonValue::boolean(v.certified));
    o.set("evidence", JsonValue::str(v.evidence));
    return o;
}

TopologyKind topology_from_name(const std::string& name) {
    if (name == "pointwise") return TopologyKind::Pointwise;
    if (name == "bb") return TopologyKind::BB;
    if (name == "c") return TopologyKind::C;
    if (name == "nn") return TopologyKind::NN;
    if (name == "nb") return TopologyKind::NB;
    throw ConfigError("unknown monitor topology '" + name + "'");
}

} // namespace

RunResult run_scenario(const Scenario& scenario) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult result;
    JsonValue report = JsonValue::object();
    report.set("schema", JsonValue::str("tvspec-report-v1"));
    report.set("scenario", JsonValue::str(scenario.name));
    report.set("seed", JsonValue::integer((long long)scenario.seed));
    report.set("depth", JsonValue::integer(scenario.depth));
    report.set("level", JsonValue::integer(scenario.level));
    report.set("space", JsonValue::str(scenario.space.name));
    if (scenario.op) report.set("operator", JsonValue::str(scenario.op->describe()));

    std::ostringstream human;
    human << "scenario " << scenario.name << " (space " << scenario.space.name << ")\n";
    std::ostringstream radius_csv, neumann_csv;
    radius_csv << "kind,n,iterate,lower,upper\n";
    neumann_csv << "lambda_re,lambda_im,topology,n,increment,verdict\n";

    JsonValue tasks = JsonValue::array();
    for (const auto& task : scenario.tasks) {
        JsonValue tj = JsonValue::object();
        switch (task.type) {
            case Scenario::Task::Type::Classify: {
                tj.set("task", JsonValue::str("classify"));
                ClassificationReport rep =
                    classify_boundedness(scenario.op, scenario.space, scenario.level);
                tj.set("nb", verdict_json(rep.nb));
                tj.set("nn", verdict_json(rep.nn));
                tj.set("continuous", verdict_json(rep.continuous));
                tj.set("bb", verdict_json(rep.bb));
                human << "  classify: nb=" << state_text(rep.nb.state)
                      << " nn=" << state_text(rep.nn.state)
                      << " cont=" << state_text(rep.continuous.state)
                      << " bb=" << state_text(rep.bb.state) << "\n";
                break;
            }
            case Scenario::Task::Type::Radii: {
                tj.set("task", JsonValue::str("radii"));
                RadiusAux aux;
                for (Index k = 1; k <= task.probe_count; ++k)
                    aux.probes.push_back(SparseVector::unit(k));
                Rng rng(scenario.seed ^ 0xf00dull);
                for (int extra = 0; extra < 2; ++extra) {
                    SparseVector x;
                    for (int s = 0; s < 3; ++s)
                        x.add(rng.uniform_int(1, 12), LogScalar::from_real(rng.uniform(-1.0, 1.0)));
                    if (!x.empty()) aux.probes.push_back(x);
                }
                aux.bounded_sets = scenario.space.bounded_sets;
                aux.candidate_families = {scenario.space.generating};
                JsonValue list = JsonValue::array();
                std::vector<RadiusEstimate> ests;
                for (RadiusKind kind : {RadiusKind::L, RadiusKind::BB, RadiusKind::C,
                                        RadiusKind::NN, RadiusKind::NB}) {
                    if (kind == RadiusKind::BB && !aux.bounded_sets) continue;
                    RadiusEstimate est = estimate_radius(kind, scenario.op,
                                                         scenario.space.generating, aux,
                                                         scenario.depth, scenario.level);
                    JsonValue ej = JsonValue::object();
                    ej.set("kind", JsonValue::str(to_string(est.kind)));
                    ej.set("lower", extreal_json(est.lower));
                    ej.set("upper", extreal_json(est.upper));
                    ej.set("lower_certified", JsonValue::boolean(est.lower_certified));
                    ej.set("upper_certified", JsonValue::boolean(est.upper_certified));
                    ej.set("exact", JsonValue::boolean(est.exact));
                    ej.set("method", JsonValue::str(est.method));
                    list.push(std::move(ej));
                    for (const auto& [n, t] : est.iterates)
                        radius_csv << to_string(est.kind) << ',' << n << ','
                                   << format_real17(t.is_infinite()
                                                        ? std::numeric_limits<double>::infinity()
                                                        : t.value())
                                   << ',' << format_real17(est.lower.value()) << ','
                                   << format_real17(est.upper.value()) << '\n';
                    human << "  r_" << to_string(est.kind) << " in [" << est.lower.str() << ", "
                          << est.upper.str() << "]"
                          << (est.exact ? " (exact)" : "") << "\n";
                    ests.push_back(std::move(est));
                }
                OrderingReport ord = verify_ordering(ests);
                tj.set("estimates", std::move(list));
                tj.set("ordering_consistent", JsonValue::boolean(ord.consistent));
                if (!ord.consistent) {
                    result.all_passed = false;
                    JsonValue v = JsonValue::array();
                    for (const auto& s : ord.violations) v.push(JsonValue::str(s));
                    tj.set("ordering_violations", std::move(v));
                }
                break;
            }
            case Scenario::Task::Type::Neumann: {
                tj.set("task", JsonValue::str("neumann"));
                JsonValue list = JsonValue::array();
                for (Complex lambda : task.lambdas) {
                    MonitorConfig cfg;
                    cfg.depth = scenario.depth;
                    cfg.level = scenario.level;
                    for (Index k = 1; k <= 4; ++k) cfg.probes.push_back(SparseVector::unit(k));
                    NeumannReport rep = converge_monitor(scenario.op, lambda,
                                                         topology_from_name(task.topology),
                                                         scenario.space, cfg);
                    JsonValue rj = JsonValue::object();
                    rj.set("lambda_re", JsonValue::real(lambda.real()));
                    rj.set("lambda_im", JsonValue::real(lambda.imag()));
                    rj.set("topology", JsonValue::str(to_string(rep.topology)));
                    rj.set("verdict", JsonValue::str(to_string(rep.verdict)));
                    rj.set("witness", JsonValue::str(rep.witness));
                    rj.set("terms_used", JsonValue::integer(rep.terms_used));
                    list.push(std::move(rj));
                    for (const auto& [n, inc] : rep.residual_trace)
                        neumann_csv << format_real17(lambda.real()) << ','
                                    << format_real17(lambda.imag()) << ',' << task.topology << ','
                                    << n << ','
                                    << format_real17(
                                           inc.is_infinite()
                                               ? std::numeric_limits<double>::infinity()
                                               : inc.value())
                                    << ',' << to_string(rep.verdict) << '\n';
                    human << "  neumann " << task.topology << " lambda=(" << lambda.real() << ","
                          << lambda.imag() << "): " << to_string(rep.verdict) << "\n";
                }
                tj.set("monitors", std::move(list));
                break;
            }
            case Scenario::Task::Type::SpectrumProbe: {
                tj.set("task", JsonValue::str("spectrum_probe"));
                JsonValue list = JsonValue::array();
                for (Complex lambda : task.lambdas) {
                    SpectrumProbeReport rep = spectrum_probe(scenario.op, lambda, scenario.space);
                    JsonValue rj = JsonValue::object();
                    rj.set("lambda_re", JsonValue::real(lambda.real()));
                    rj.set("lambda_im", JsonValue::real(lambda.imag()));
                    rj.set("l", class_verdict_json(rep.l));
                    rj.set("bb", class_verdict_json(rep.bb));
                    rj.set("c", class_verdict_json(rep.c));
                    rj.set("nn", class_verdict_json(rep.nn));
                    rj.set("nb", class_verdict_json(rep.nb));
                    list.push(std::move(rj));
                    human << "  spectrum probe lambda=(" << lambda.real() << "," << lambda.imag()
                          << ")\n";
                }
                tj.set("probes", std::move(list));
                break;
            }
            case Scenario::Task::Type::GalleryCheck: {
                tj.set("task", JsonValue::str("gallery_check"));
                const GalleryEntry* entry = find_gallery_entry(task.gallery_id);
                if (!entry) throw ConfigError("unknown gallery id '" + task.gallery_id + "'");
                GalleryOutcome outcome = entry->run(scenario.seed);
                tj.set("id", JsonValue::str(entry->id));
                tj.set("source", JsonValue::str(entry->source));
                tj.set("expectation", JsonValue::str(entry->expectation));
                tj.set("passed", JsonValue::boolean(outcome.passed));
                tj.set("details", std::move(outcome.details));
                result.all_passed = result.all_passed && outcome.passed;
                human << "  gallery " << entry->id << ": "
                      << (outcome.passed ? "pass" : "FAIL") << "\n";
                break;
            }
        }
        tasks.push(std::move(tj));
    }
    report.set("tasks", std::move(tasks));
    report.set("all_passed", JsonValue::boolean(result.all_passed));

    auto t1 = std::chrono::steady_clock::now();
    result.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    human << (result.all_passed ? "all tasks passed" : "SOME TASKS FAILED") << " ("
          << result.elapsed_ms << " ms)\n";

    result.report = std::move(report);
    result.radius_csv = radius_csv.str();
    result.neumann_csv = neumann_csv.str();
    result.human_text = human.str();
    return result;
}

void emit_result(const RunResult& result, const std::string& format, const std::string& out_dir,
                 const std::string& stem) {
    std::string base = out_dir.empty() ? stem : out_dir + "/" + stem;
    if (format == "json") {
        write_text_file(base + ".json", result.report.dump(2) + "\n");
    } else if (format == "csv-tables") {
        write_text_file(base + "_radius.csv", result.radius_csv);
        write_text_file(base + "_neumann.csv", result.neumann_csv);
    } else if (format == "human-text") {
        write_text_file(base + ".txt", result.human_text);
    } else {
        throw ConfigError("unknown output format '" + format + "'");
    }
}

} // namespace tvspec
