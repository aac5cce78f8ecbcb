#include "calgeo/gallery.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "calgeo/form_io.hpp"
#include "calgeo/link_io.hpp"

namespace calgeo::gallery {

using nlohmann::json;

AlternatingForm special_lagrangian_3form() {
    AlternatingForm phi(6, 3);
    phi.set(MultiIndex({1, 2, 3}), 1.0);
    phi.set(MultiIndex({1, 5, 6}), -1.0);
    phi.set(MultiIndex({2, 4, 6}), 1.0);
    phi.set(MultiIndex({3, 4, 5}), -1.0);
    return phi;
}

AlternatingForm kahler_sum_2form() {
    AlternatingForm phi(4, 2);
    phi.set(MultiIndex({1, 2}), 1.0);
    phi.set(MultiIndex({3, 4}), 1.0);
    return phi;
}

AlternatingForm associative_3form() {
    AlternatingForm phi(7, 3);
    phi.set(MultiIndex({1, 2, 3}), 1.0);
    phi.set(MultiIndex({1, 4, 5}), 1.0);
    phi.set(MultiIndex({1, 6, 7}), 1.0);
    phi.set(MultiIndex({2, 4, 6}), 1.0);
    phi.set(MultiIndex({2, 5, 7}), -1.0);
    phi.set(MultiIndex({3, 4, 7}), -1.0);
    phi.set(MultiIndex({3, 5, 6}), -1.0);
    return phi;
}

AlternatingForm coassociative_4form() {
    return riesz_form(hodge_dual(riesz_multivector(associative_3form())));
}

LinkSpec circle_spec(int resolution) {
    LinkSpec s;
    s.family = "circle";
    s.resolution = resolution;
    return s;
}

LinkSpec sphere2_spec(int resolution) {
    LinkSpec s;
    s.family = "sphere";
    s.sphere_dim = 2;
    s.resolution = resolution;
    return s;
}

LinkSpec clifford_torus_spec(int resolution) {
    LinkSpec s;
    s.family = "product_torus";
    s.resolution = resolution;
    return s;
}

LinkSpec latitude_spec(int resolution, double z0) {
    LinkSpec s;
    s.family = "latitude";
    s.resolution = resolution;
    s.z0 = z0;
    return s;
}

LinkSpec sl_union_spec(int resolution) {
    // ordered spans orient the cone planes as e123, -e345, -e156, each of
    // value +1 under the special Lagrangian form
    LinkSpec s;
    s.family = "union";
    s.resolution = resolution;
    for (const auto& span : {std::vector<int>{1, 2, 3}, std::vector<int>{5, 4, 3},
                             std::vector<int>{1, 6, 5}}) {
        LinkSpec m;
        m.family = "great_sphere";
        m.ambient_dim = 6;
        m.span = span;
        m.resolution = resolution;
        s.members.push_back(std::move(m));
    }
    return s;
}

const std::vector<SimpleVector>& sl_planes() {
    static const std::vector<SimpleVector> planes = [] {
        std::vector<SimpleVector> p;
        Eigen::MatrixXd f(6, 3);
        f.setZero();
        f(0, 0) = 1, f(1, 1) = 1, f(2, 2) = 1;  // e1 ^ e2 ^ e3
        p.emplace_back(f, +1);
        f.setZero();
        f(3, 0) = 1, f(4, 1) = 1, f(2, 2) = 1;  // -(f1 ^ f2 ^ e3)
        p.emplace_back(f, -1);
        f.setZero();
        f(0, 0) = 1, f(4, 1) = 1, f(5, 2) = 1;  // -(e1 ^ f2 ^ f3)
        p.emplace_back(f, -1);
        return p;
    }();
    return planes;
}

namespace {

json obstruct_manifest(const json& factors, int varying, const json& bases,
                       const std::string& source, int count, int seed, double cal_tol) {
    return json{{"command", "obstruct"},
                {"seed", seed},
                {"factors", factors},
                {"varying_factor", varying},
                {"base_choices", bases},
                {"phi", {{"source", source}, {"count", count}, {"seed", seed}}},
                {"cal_tol", cal_tol},
                {"output", {{"format", "text"}}}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

}  // namespace

std::vector<std::pair<std::string, std::string>> write_all(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::pair<std::string, std::string>> written;
    auto note = [&](const std::string& name, const std::string& file) {
        written.emplace_back(name, file);
    };

    write_form_file((fs::path(dir) / "sl3.form").string(), special_lagrangian_3form());
    note("special Lagrangian 3-form Re(dz123) on R^6", "sl3.form");
    write_form_file((fs::path(dir) / "kahler4.form").string(), kahler_sum_2form());
    note("Kahler-type 2-form e12*+e34* on R^4", "kahler4.form");
    write_form_file((fs::path(dir) / "assoc7.form").string(), associative_3form());
    note("associative 3-form on R^7", "assoc7.form");
    write_form_file((fs::path(dir) / "coassoc7.form").string(), coassociative_4form());
    note("coassociative 4-form on R^7", "coassoc7.form");

    write_json(fs::path(dir) / "circle.json", link_spec_to_json(circle_spec()));
    note("unit circle link", "circle.json");
    write_json(fs::path(dir) / "sphere2.json", link_spec_to_json(sphere2_spec()));
    note("2-sphere link", "sphere2.json");
    write_json(fs::path(dir) / "clifford_torus.json",
               link_spec_to_json(clifford_torus_spec()));
    note("Clifford torus link (graded sampling)", "clifford_torus.json");
    write_json(fs::path(dir) / "latitude.json", link_spec_to_json(latitude_spec()));
    note("latitude circle z0=0.5 (non-minimal control)", "latitude.json");
    write_json(fs::path(dir) / "sl_union.json", link_spec_to_json(sl_union_spec()));
    note("union of three special Lagrangian 2-spheres in S^5", "sl_union.json");

    json circle64 = link_spec_to_json(circle_spec(64));
    json clifford_factors = json::array({circle64, circle64});
    json clifford_bases = json::array({json{{"factor", 2}, {"stratum", 0}, {"index", 17}}});
    write_json(fs::path(dir) / "clifford_obstruct.json",
               obstruct_manifest(clifford_factors, 1, clifford_bases, "fitted", 110, 7, 1e-3));
    note("obstruction manifest: cone over S^1 x. S^1", "clifford_obstruct.json");

    json slu_factors =
        json::array({link_spec_to_json(sl_union_spec(12)), link_spec_to_json(circle_spec(24))});
    json slu_bases = json::array({json{{"factor", 2}, {"stratum", 0}, {"index", 5}}});
    write_json(fs::path(dir) / "sl_union_circle_obstruct.json",
               obstruct_manifest(slu_factors, 1, slu_bases, "fitted", 110, 11, 1e-3));
    note("obstruction manifest: cone over (SL union) x. S^1", "sl_union_circle_obstruct.json");

    write_json(fs::path(dir) / "clifford_stationarity.json",
               json{{"command", "stationarity"},
                    {"seed", 0},
                    {"link", link_spec_to_json(clifford_torus_spec(64))},
                    {"fields", 20},
                    {"tol", 1e-3},
                    {"output", {{"format", "records"}}}});
    note("stationarity manifest: Clifford torus", "clifford_stationarity.json");

    write_json(fs::path(dir) / "sl3_comass.json",
               json{{"command", "comass"},
                    {"seed", 0},
                    {"form", "sl3.form"},
                    {"oracle", true},
                    {"output", {{"format", "records"}}}});
    note("comass manifest: special Lagrangian 3-form", "sl3_comass.json");

    return written;
}

std::vector<std::string> catalog() {
    return {
        "sl3.form                      special Lagrangian 3-form Re(dz123) on R^6",
        "kahler4.form                  Kahler-type 2-form e12*+e34* on R^4",
        "assoc7.form                   associative 3-form on R^7",
        "coassoc7.form                 coassociative 4-form on R^7",
        "circle.json                   unit circle link",
        "sphere2.json                  2-sphere link",
        "clifford_torus.json           Clifford torus link (graded sampling)",
        "latitude.json                 latitude circle z0=0.5 (non-minimal control)",
        "sl_union.json                 union of three special Lagrangian 2-spheres in S^5",
        "clifford_obstruct.json        obstruction manifest: cone over S^1 x. S^1",
        "sl_union_circle_obstruct.json obstruction manifest: cone over (SL union) x. S^1",
        "clifford_stationarity.json    stationarity manifest: Clifford torus",
        "sl3_comass.json               comass manifest: special Lagrangian 3-form",
    };
}

}  // namespace calgeo::gallery
