#include "calgeo/link_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace calgeo {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
}

Stratum stratum_from_json(const json& j, int ambient_dim, int dim) {
    reject_unknown_keys(j, {"points", "frames", "weights", "multiplicities"}, "stratum");
    const auto& pts = j.at("points");
    const auto& frames = j.at("frames");
    const auto& weights = j.at("weights");
    const size_t count = weights.size();
    if (pts.size() != count * static_cast<size_t>(ambient_dim))
        throw std::invalid_argument("stratum: points array size mismatch");
    if (frames.size() != count * static_cast<size_t>(ambient_dim * dim))
        throw std::invalid_argument("stratum: frames array size mismatch");
    std::vector<int> mult(count, 1);
    if (j.contains("multiplicities")) {
        if (j.at("multiplicities").size() != count)
            throw std::invalid_argument("stratum: multiplicities size mismatch");
        for (size_t i = 0; i < count; ++i) mult[i] = j.at("multiplicities")[i].get<int>();
    }
    Stratum s;
    for (size_t i = 0; i < count; ++i) {
        LinkSample smp;
        smp.point = Eigen::VectorXd(ambient_dim);
        for (int a = 0; a < ambient_dim; ++a)
            smp.point(a) = pts[i * ambient_dim + static_cast<size_t>(a)].get<double>();
        smp.frame = Eigen::MatrixXd(ambient_dim, dim);
        // row-major: sample, then frame column, then ambient coordinate
        for (int c = 0; c < dim; ++c)
            for (int a = 0; a < ambient_dim; ++a)
                smp.frame(a, c) =
                    frames[(i * static_cast<size_t>(dim) + static_cast<size_t>(c)) *
                               static_cast<size_t>(ambient_dim) +
                           static_cast<size_t>(a)]
                        .get<double>();
        smp.weight = weights[i].get<double>();
        smp.multiplicity = mult[i];
        s.samples.push_back(std::move(smp));
    }
    return s;
}

}  // namespace

LinkSpec link_spec_from_json(const nlohmann::json& j) {
    reject_unknown_keys(j,
                        {"family", "resolution", "dim", "z0", "span", "ambient_dim",
                         "multiplicity", "members", "strata"},
                        "link spec");
    LinkSpec spec;
    spec.family = j.at("family").get<std::string>();
    if (j.contains("resolution")) spec.resolution = j.at("resolution").get<int>();
    if (j.contains("dim")) {
        spec.sphere_dim = j.at("dim").get<int>();
        spec.explicit_dim = spec.sphere_dim;
    }
    if (j.contains("z0")) spec.z0 = j.at("z0").get<double>();
    if (j.contains("span")) spec.span = j.at("span").get<std::vector<int>>();
    if (j.contains("ambient_dim")) spec.ambient_dim = j.at("ambient_dim").get<int>();
    if (j.contains("multiplicity")) spec.multiplicity = j.at("multiplicity").get<int>();
    if (j.contains("members"))
        for (const auto& m : j.at("members")) spec.members.push_back(link_spec_from_json(m));
    if (j.contains("strata")) {
        if (!j.contains("ambient_dim") || !j.contains("dim"))
            throw std::invalid_argument("explicit link: needs ambient_dim and dim");
        for (const auto& s : j.at("strata"))
            spec.explicit_strata.push_back(
                stratum_from_json(s, spec.ambient_dim, spec.explicit_dim));
    }
    return spec;
}

nlohmann::json link_spec_to_json(const LinkSpec& spec) {
    json j;
    j["family"] = spec.family;
    j["resolution"] = spec.resolution;
    if (spec.family == "sphere") j["dim"] = spec.sphere_dim;
    if (spec.family == "latitude") j["z0"] = spec.z0;
    if (!spec.span.empty()) j["span"] = spec.span;
    if (spec.ambient_dim > 0) j["ambient_dim"] = spec.ambient_dim;
    if (spec.multiplicity != 1) j["multiplicity"] = spec.multiplicity;
    if (!spec.members.empty()) {
        json members = json::array();
        for (const auto& m : spec.members) members.push_back(link_spec_to_json(m));
        j["members"] = members;
    }
    return j;
}

LinkSpec load_link_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open link fixture: " + path);
    json j = json::parse(in);
    return link_spec_from_json(j);
}

nlohmann::json explicit_link_to_json(const SampledLink& link) {
    json strata = json::array();
    for (const auto& st : link.strata()) {
        json pts = json::array(), frames = json::array(), weights = json::array(),
             mult = json::array();
        for (const auto& s : st.samples) {
            for (int a = 0; a < link.ambient_dim(); ++a) pts.push_back(s.point(a));
            for (int c = 0; c < link.dim(); ++c)
                for (int a = 0; a < link.ambient_dim(); ++a) frames.push_back(s.frame(a, c));
            weights.push_back(s.weight);
            mult.push_back(s.multiplicity);
        }
        strata.push_back({{"points", pts},
                          {"frames", frames},
                          {"weights", weights},
                          {"multiplicities", mult}});
    }
    return json{{"family", "explicit"},
                {"resolution", 4},
                {"ambient_dim", link.ambient_dim()},
                {"dim", link.dim()},
                {"strata", strata}};
}

}  // namespace calgeo
