#include "calgeo/cli.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "calgeo/comass.hpp"
#include "calgeo/decomposition.hpp"
#include "calgeo/form_io.hpp"
#include "calgeo/gallery.hpp"
#include "calgeo/link_io.hpp"
#include "calgeo/obstruction.hpp"
#include "calgeo/report.hpp"
#include "calgeo/variation.hpp"

namespace calgeo::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (fs::path(base_dir) / p).string();
}

LinkSpec named_link_spec(const std::string& name, int resolution) {
    if (name == "circle") return gallery::circle_spec(resolution);
    if (name == "sphere2") return gallery::sphere2_spec(resolution);
    if (name == "clifford") return gallery::clifford_torus_spec(resolution);
    if (name == "latitude") return gallery::latitude_spec(resolution);
    if (name == "sl_union") return gallery::sl_union_spec(resolution);
    if (name == "sphere3") {
        LinkSpec s = gallery::sphere2_spec(resolution);
        s.sphere_dim = 3;
        return s;
    }
    throw std::invalid_argument("unknown link name '" + name + "'");
}

LinkSpec link_spec_from_value(const json& v, int default_resolution,
                              const std::string& base_dir) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.size() > 5 && s.substr(s.size() - 5) == ".json")
            return load_link_spec(resolve(s, base_dir));
        return named_link_spec(s, default_resolution);
    }
    return link_spec_from_json(v);
}

std::string pluecker_string(const SimpleVector& sv) {
    Eigen::VectorXd p = dense_coeffs(sv.expansion());
    std::string out = "[";
    for (long i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += format_g12(p(i));
    }
    out += "]";
    return out;
}

struct CommandOutput {
    std::vector<Report> reports;
    int exit_code = 0;
};

CommandOutput run_comass(const json& m, const std::string& base_dir) {
    reject_unknown_keys(m, {"command", "seed", "output", "form", "restarts", "oracle",
                            "resolution"},
                        "comass manifest");
    AlternatingForm phi = parse_form_file(resolve(m.at("form").get<std::string>(), base_dir));
    ComassOptions opts;
    opts.restarts = m.value("restarts", 40);
    opts.seed = m.value("seed", 0ULL);
    ComassCertificate cert = comass(phi, opts);

    const bool guard = phi.ambient_dim() <= 8 && phi.degree() <= 4;
    const bool want_oracle = m.value("oracle", guard);

    Report r;
    r.add("command", "comass");
    r.add("ambient_dim", phi.ambient_dim());
    r.add("degree", phi.degree());
    r.add("comass", cert.value);
    r.add("method", "ascent");
    r.add("restarts_used", cert.restarts_used);
    r.add("converged", cert.converged);
    if (want_oracle) {
        double oracle = comass_oracle(phi, m.value("resolution", 24));
        r.add("oracle_value", oracle);
        r.add("oracle_gap", std::abs(cert.value - oracle));
    }
    r.add("maximizer_count", static_cast<int>(cert.maximizers.size()));
    int i = 0;
    for (const auto& sv : cert.maximizers) {
        r.add("maximizer_" + std::to_string(i), pluecker_string(sv));
        if (++i >= 8) break;
    }
    return {{r}, 0};
}

CommandOutput run_product(const json& m, const std::string& base_dir) {
    reject_unknown_keys(m, {"command", "seed", "output", "factors", "resolution",
                            "check_stationary", "fields", "tol"},
                        "product manifest");
    const int res = m.value("resolution", 64);
    std::vector<SampledLink> factors;
    for (const auto& f : m.at("factors"))
        factors.push_back(build_link(link_spec_from_value(f, res, base_dir)));
    MinimalProductSpec spec = minimal_product_spec(factors);
    SampledLink product = minimal_product(factors);
    product.validate();

    double on_sphere = 0;
    for (const auto& st : product.strata())
        for (const auto& s : st.samples)
            on_sphere = std::max(on_sphere, std::abs(s.point.norm() - 1.0));

    Report r;
    r.add("command", "product");
    r.add("n_factors", static_cast<int>(factors.size()));
    for (size_t i = 0; i < spec.lambdas.size(); ++i) {
        r.add("lambda_" + std::to_string(i + 1), spec.lambdas[i]);
        r.add("dim_" + std::to_string(i + 1), spec.factor_dims[i]);
    }
    r.add("product_dim", product.dim());
    r.add("ambient_dim", product.ambient_dim());
    r.add("total_volume", product.total_volume());
    r.add("on_sphere_residual", on_sphere);

    int exit_code = 0;
    if (m.value("check_stationary", false)) {
        StationarityReport rep =
            stationarity_report(product, m.value("fields", 20), m.value("seed", 0ULL));
        double tol = m.value("tol", 1e-3);
        r.add("stationarity_max_abs", rep.max_abs);
        r.add("stationarity_mean_abs", rep.mean_abs);
        r.add("stationarity_fields", rep.n_fields);
        r.add("stationary", rep.max_abs <= tol);
        if (rep.max_abs > tol) exit_code = 1;
    }
    return {{r}, exit_code};
}

CommandOutput run_stationarity(const json& m, const std::string& base_dir) {
    reject_unknown_keys(m, {"command", "seed", "output", "link", "resolution", "fields",
                            "tol", "require_stationary"},
                        "stationarity manifest");
    SampledLink link =
        build_link(link_spec_from_value(m.at("link"), m.value("resolution", 64), base_dir));
    link.validate();
    const int fields = m.value("fields", 20);
    const std::uint64_t seed = m.value("seed", 0ULL);
    const double tol = m.value("tol", 1e-3);
    StationarityReport rep = stationarity_report(link, fields, seed);

    Report r;
    r.add("command", "stationarity");
    r.add("samples", static_cast<long>(link.sample_count()));
    r.add("total_volume", link.total_volume());
    r.add("n_fields", rep.n_fields);
    r.add("seed", static_cast<unsigned long long>(rep.seed));
    r.add("max_abs", rep.max_abs);
    r.add("mean_abs", rep.mean_abs);
    r.add("tol", tol);
    r.add("stationary", rep.max_abs <= tol);
    int exit_code = 0;
    if (m.value("require_stationary", false) && rep.max_abs > tol) exit_code = 1;
    return {{r}, exit_code};
}

CommandOutput run_decompose(const json& m, const std::string& base_dir) {
    reject_unknown_keys(m, {"command", "seed", "output", "form", "frame"},
                        "decompose manifest");
    AlternatingForm phi = parse_form_file(resolve(m.at("form").get<std::string>(), base_dir));
    const int n = phi.ambient_dim();
    Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
    std::string frame = m.value("frame", std::string("standard"));
    if (frame != "standard") {
        std::ifstream in(resolve(frame, base_dir));
        if (!in) throw std::runtime_error("cannot open frame file: " + frame);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!(in >> basis(r, c)))
                    throw std::runtime_error("frame file: expected " + std::to_string(n * n) +
                                             " numbers");
    }
    DecompositionReport rep = decompose_at(phi, basis);
    Report r;
    r.add("command", "decompose");
    r.add("leading_coefficient", rep.leading_coefficient);
    r.add("forbidden_max", rep.forbidden_max);
    r.add("reconstruction_residual", rep.reconstruction_residual);
    r.add("allowed_terms", static_cast<int>(rep.allowed_terms.size()));
    int i = 0;
    for (const auto& [I, c] : rep.allowed_terms) {
        std::string key = "allowed_" + std::to_string(i++);
        std::string idx;
        for (size_t k = 0; k < I.indices().size(); ++k) {
            if (k) idx += ",";
            idx += std::to_string(I.indices()[k]);
        }
        r.add(key, idx + " : " + format_g12(c));
        if (i >= 16) break;
    }
    return {{r}, 0};
}

CommandOutput run_obstruct(const json& m, const std::string& base_dir) {
    reject_unknown_keys(m, {"command", "seed", "output", "factors", "resolution",
                            "varying_factor", "base_choices", "phi", "cal_tol", "require"},
                        "obstruct manifest");
    std::vector<SampledLink> factors;
    for (const auto& f : m.at("factors"))
        factors.push_back(build_link(link_spec_from_value(f, m.value("resolution", 64), base_dir)));
    const int varying = m.value("varying_factor", 1);
    const double cal_tol = m.value("cal_tol", 1e-3);
    std::vector<BaseChoice> bases;
    if (m.contains("base_choices"))
        for (const auto& b : m.at("base_choices")) {
            reject_unknown_keys(b, {"factor", "stratum", "index"}, "base choice");
            BaseChoice bc;
            bc.factor = b.at("factor").get<int>();
            bc.stratum = b.value("stratum", 0);
            bc.index = b.value("index", -1);
            bases.push_back(bc);
        }

    const json& phi_spec = m.at("phi");
    reject_unknown_keys(phi_spec, {"source", "path", "count", "seed"}, "phi spec");
    const std::string source = phi_spec.value("source", std::string("fitted"));
    const std::string require = m.value("require", std::string("none"));

    std::vector<Report> reports;
    int exit_code = 0;

    auto report_from = [&](const ObstructionReport& rep, const std::string& src) {
        Report r;
        r.add("source", src);
        r.add("calibration_residual", rep.calibration_residual);
        r.add("calibration_sign", rep.calibration_sign);
        r.add("comass", rep.candidate_comass);
        r.add("psi_constancy", rep.psi_constancy);
        r.add("psi_mean", rep.psi_mean);
        r.add("pullback_integral", rep.pullback_integral);
        r.add("stokes_value", rep.stokes_value);
        r.add("predicted_magnitude", rep.predicted_magnitude);
        r.add("verdict", to_string(rep.verdict));
        return r;
    };

    if (source == "file") {
        AlternatingForm phi =
            parse_form_file(resolve(phi_spec.at("path").get<std::string>(), base_dir));
        ObstructionReport rep = obstruction_witness(factors, phi, varying, bases, cal_tol);
        Report r;
        r.add("command", "obstruct");
        reports.push_back(r);
        reports.push_back(report_from(rep, "file"));
        if (require == "calibration" &&
            rep.verdict == ObstructionVerdict::candidate_not_a_calibration)
            exit_code = 1;
    } else if (source == "fitted" || source == "random") {
        const int count = phi_spec.value("count", 100);
        const std::uint64_t seed = phi_spec.value("seed", m.value("seed", 0ULL));
        const int n_fitted = source == "random" ? 0 : -1;
        ObstructionFamilyReport fam =
            obstruction_family(factors, varying, bases, count, seed, cal_tol, n_fitted);
        Report summary;
        summary.add("command", "obstruct");
        summary.add("candidates", static_cast<int>(fam.candidates.size()));
        summary.add("predicted_magnitude", fam.predicted_magnitude);
        summary.add("min_residual", fam.min_residual);
        summary.add("dichotomy_holds", fam.dichotomy_holds);
        reports.push_back(summary);
        for (size_t i = 0; i < fam.candidates.size(); ++i) {
            const auto& c = fam.candidates[i];
            Report r;
            r.add("candidate", static_cast<int>(i));
            r.add("source", c.source);
            r.add("calibration_residual", c.calibration_residual);
            r.add("comass", c.comass);
            r.add("pullback_integral", c.pullback_integral);
            r.add("verdict", to_string(c.verdict));
            reports.push_back(r);
        }
        if (require == "dichotomy" && !fam.dichotomy_holds) exit_code = 1;
        if (require == "calibration") exit_code = 1;  // a family run never certifies one
    } else {
        throw std::invalid_argument("obstruct: phi.source must be file, fitted or random");
    }
    return {reports, exit_code};
}

CommandOutput run_gallery(const json& m, const std::string& base_dir) {
    reject_unknown_keys(m, {"command", "seed", "output", "out"}, "gallery manifest");
    Report r;
    r.add("command", "gallery");
    std::vector<Report> reports;
    if (m.contains("out")) {
        auto written = gallery::write_all(resolve(m.at("out").get<std::string>(), base_dir));
        r.add("written", static_cast<int>(written.size()));
        reports.push_back(r);
        for (const auto& [name, file] : written) {
            Report e;
            e.add("file", file);
            e.add("description", name);
            reports.push_back(e);
        }
    } else {
        r.add("fixtures", static_cast<int>(gallery::catalog().size()));
        reports.push_back(r);
        for (const auto& line : gallery::catalog()) {
            Report e;
            e.add("fixture", line);
            reports.push_back(e);
        }
    }
    return {reports, 0};
}

}  // namespace

RunResult run_manifest(const json& manifest, const std::string& base_dir) {
    RunResult out;
    try {
        const std::string command = manifest.at("command").get<std::string>();
        std::string format = "text";
        std::string output_path;
        if (manifest.contains("output")) {
            reject_unknown_keys(manifest.at("output"), {"path", "format"}, "output spec");
            format = manifest.at("output").value("format", "text");
            output_path = manifest.at("output").value("path", "");
        }
        CommandOutput result;
        if (command == "comass")
            result = run_comass(manifest, base_dir);
        else if (command == "product")
            result = run_product(manifest, base_dir);
        else if (command == "stationarity")
            result = run_stationarity(manifest, base_dir);
        else if (command == "decompose")
            result = run_decompose(manifest, base_dir);
        else if (command == "obstruct")
            result = run_obstruct(manifest, base_dir);
        else if (command == "gallery")
            result = run_gallery(manifest, base_dir);
        else
            throw std::invalid_argument("unknown command '" + command + "'");

        out.output = emit_reports(result.reports, format);
        out.exit_code = result.exit_code;
        if (!output_path.empty()) {
            std::ofstream f(resolve(output_path, base_dir), std::ios::binary);
            if (!f) throw std::runtime_error("cannot write output file: " + output_path);
            f << out.output;
        }
    } catch (const FormParseError& e) {
        out.exit_code = 2;
        out.error = std::string("form parse error: ") + e.what();
    } catch (const json::exception& e) {
        out.exit_code = 2;
        out.error = std::string("manifest error: ") + e.what();
    } catch (const std::exception& e) {
        out.exit_code = 2;
        out.error = e.what();
    }
    return out;
}

RunResult run_manifest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        RunResult out;
        out.exit_code = 2;
        out.error = "cannot open manifest: " + path;
        return out;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json manifest;
    try {
        manifest = json::parse(text);
    } catch (const json::parse_error& e) {
        // convert the byte offset into a line/column diagnostic
        size_t offset = std::min(e.byte, text.size());
        int line = 1, col = 1;
        for (size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        RunResult out;
        out.exit_code = 2;
        out.error = "manifest parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(col);
        return out;
    }
    return run_manifest(manifest, fs::path(path).parent_path().string());
}

int main_entry(int argc, char** argv) {
    CLI::App app{"calibrated-geometry toolkit: comass, minimal products, stationarity and "
                 "calibration obstructions"};
    app.require_subcommand(1);

    auto emit = [](const RunResult& r) {
        if (!r.output.empty()) std::fwrite(r.output.data(), 1, r.output.size(), stdout);
        if (!r.error.empty()) std::fprintf(stderr, "error: %s\n", r.error.c_str());
        return r.exit_code;
    };

    std::string manifest_path, output_path, form_path, frame_path = "standard";
    std::string link_value, source = "fitted", require = "none", out_dir;
    std::vector<std::string> factor_names;
    bool records = false, check_stationary = false, require_stationary = false;
    bool no_oracle = false;
    int restarts = 40, resolution = 64, fields = 20, candidates = 100, varying = 1;
    int oracle_resolution = 24;
    std::uint64_t seed = 0;
    double tol = 1e-3, cal_tol = 1e-3;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--manifest", manifest_path, "JSON run manifest");
        cmd->add_option("--output", output_path, "write the report to a file");
        cmd->add_flag("--records", records, "records output (one JSON object per line)");
        cmd->add_option("--seed", seed, "RNG seed (default 0)");
    };

    CLI::App* comass_cmd = app.add_subcommand("comass", "comass of a constant-coefficient form");
    add_common(comass_cmd);
    comass_cmd->add_option("--form", form_path, "form file");
    comass_cmd->add_option("--restarts", restarts, "ascent restarts");
    comass_cmd->add_flag("--no-oracle", no_oracle, "skip the sampling oracle");
    comass_cmd->add_option("--resolution", oracle_resolution, "oracle resolution");

    CLI::App* product_cmd = app.add_subcommand("product", "minimal product of links");
    add_common(product_cmd);
    product_cmd->add_option("--factors", factor_names, "factor links (names or fixture files)");
    product_cmd->add_option("--resolution", resolution, "sampling resolution");
    product_cmd->add_flag("--check-stationary", check_stationary, "run the stationarity battery");
    product_cmd->add_option("--fields", fields, "number of test fields");
    product_cmd->add_option("--tol", tol, "stationarity tolerance");

    CLI::App* stat_cmd = app.add_subcommand("stationarity", "first-variation battery on a link");
    add_common(stat_cmd);
    stat_cmd->add_option("--link", link_value, "link fixture file or name");
    stat_cmd->add_option("--resolution", resolution, "resolution for named links");
    stat_cmd->add_option("--fields", fields, "number of test fields");
    stat_cmd->add_option("--tol", tol, "stationarity tolerance");
    stat_cmd->add_flag("--require-stationary", require_stationary, "exit 1 when non-stationary");

    CLI::App* dec_cmd = app.add_subcommand("decompose", "dual-basis decomposition of a form");
    add_common(dec_cmd);
    dec_cmd->add_option("--form", form_path, "form file");
    dec_cmd->add_option("--frame", frame_path, "frame file or 'standard'");

    CLI::App* obs_cmd = app.add_subcommand("obstruct", "calibration obstruction pipeline");
    add_common(obs_cmd);
    obs_cmd->add_option("--factors", factor_names, "factor links (names or fixture files)");
    obs_cmd->add_option("--resolution", resolution, "sampling resolution");
    obs_cmd->add_option("--varying", varying, "varying factor (1-based)");
    obs_cmd->add_option("--form", form_path, "candidate form file (source=file)");
    obs_cmd->add_option("--source", source, "phi source: file | fitted | random");
    obs_cmd->add_option("--candidates", candidates, "candidate family size");
    obs_cmd->add_option("--cal-tol", cal_tol, "calibration residual tolerance");
    obs_cmd->add_option("--require", require, "none | dichotomy | calibration");

    CLI::App* gal_cmd = app.add_subcommand("gallery", "list or write the fixture gallery");
    add_common(gal_cmd);
    gal_cmd->add_option("--out", out_dir, "write fixtures into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (!manifest_path.empty()) return emit(run_manifest_file(manifest_path));

    json m;
    m["seed"] = seed;
    json output;
    output["format"] = records ? "records" : "text";
    if (!output_path.empty()) output["path"] = output_path;
    m["output"] = output;

    try {
        if (comass_cmd->parsed()) {
            m["command"] = "comass";
            if (form_path.empty()) throw std::invalid_argument("comass: --form is required");
            m["form"] = form_path;
            m["restarts"] = restarts;
            m["resolution"] = oracle_resolution;
            if (no_oracle) m["oracle"] = false;
        } else if (product_cmd->parsed()) {
            m["command"] = "product";
            if (factor_names.empty())
                throw std::invalid_argument("product: --factors is required");
            m["factors"] = factor_names;
            m["resolution"] = resolution;
            m["check_stationary"] = check_stationary;
            m["fields"] = fields;
            m["tol"] = tol;
        } else if (stat_cmd->parsed()) {
            m["command"] = "stationarity";
            if (link_value.empty())
                throw std::invalid_argument("stationarity: --link is required");
            m["link"] = link_value;
            m["resolution"] = resolution;
            m["fields"] = fields;
            m["tol"] = tol;
            m["require_stationary"] = require_stationary;
        } else if (dec_cmd->parsed()) {
            m["command"] = "decompose";
            if (form_path.empty()) throw std::invalid_argument("decompose: --form is required");
            m["form"] = form_path;
            m["frame"] = frame_path;
        } else if (obs_cmd->parsed()) {
            m["command"] = "obstruct";
            if (factor_names.empty())
                throw std::invalid_argument("obstruct: --factors or --manifest is required");
            json factors = json::array();
            for (const auto& f : factor_names) factors.push_back(f);
            m["factors"] = factors;
            m["resolution"] = resolution;
            m["varying_factor"] = varying;
            m["cal_tol"] = cal_tol;
            m["require"] = require;
            json phi;
            phi["source"] = source;
            phi["count"] = candidates;
            phi["seed"] = seed;
            if (!form_path.empty()) {
                phi["source"] = "file";
                phi["path"] = form_path;
            }
            m["phi"] = phi;
        } else if (gal_cmd->parsed()) {
            m["command"] = "gallery";
            if (!out_dir.empty()) m["out"] = out_dir;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return emit(run_manifest(m, fs::current_path().string()));
}

}  // namespace calgeo::cli
