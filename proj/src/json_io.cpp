#include "qspace/json_io.hpp"

#include <fstream>
#include <iostream>

#include "qspace/errors.hpp"

namespace qspace {

namespace {

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw error("expected a coordinate array");
    Vec v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(x.get<double>());
    return v;
}

std::vector<Vec> vecs_from_json(const Json& j) {
    if (!j.is_array()) throw error("expected an array of points");
    std::vector<Vec> out;
    out.reserve(j.size());
    for (const auto& p : j) out.push_back(vec_from_json(p));
    return out;
}

}  // namespace

Json to_json(const QPoint& p) {
    Json j;
    j["n"] = p.dimension();
    j["points"] = p.points();
    return j;
}

QPoint qpoint_from_json(const Json& j) {
    std::vector<Vec> pts = vecs_from_json(j.at("points"));
    QPoint p{std::move(pts)};
    if (j.contains("n") && j.at("n").get<std::size_t>() != p.dimension())
        throw error("declared dimension n disagrees with the point data");
    return p;
}

Json to_json(const Matching& m) {
    Json j;
    j["sigma"] = m.sigma;
    j["squared_cost"] = m.squared_cost;
    return j;
}

Json to_json(const DistanceResult& d) {
    Json j;
    j["g"] = d.g;
    j["g_squared"] = d.g_squared;
    j["witness"] = to_json(d.witness);
    return j;
}

Json to_json(const Signature& s) {
    Json j;
    j["J"] = s.J;
    j["k"] = s.multiplicities;
    return j;
}

Json to_json(const TangentVector& v) {
    Json j;
    j["base"] = to_json(v.base());
    j["blocks"] = v.blocks();
    return j;
}

TangentVector tangent_from_json(const Json& j) {
    QPoint base = qpoint_from_json(j.at("base"));
    const Json& jb = j.at("blocks");
    if (!jb.is_array()) throw error("expected an array of blocks");
    std::vector<std::vector<Vec>> blocks;
    blocks.reserve(jb.size());
    for (const auto& b : jb) blocks.push_back(vecs_from_json(b));
    return TangentVector(std::move(base), std::move(blocks));
}

Json to_json(const BranchedCurve& c) {
    Json j;
    j["a"] = c.domain_start();
    j["b"] = c.domain_end();
    j["samples"] = c.sample_count();
    j["branches"] = c.branches();
    return j;
}

BranchedCurve curve_from_json(const Json& j) {
    const Json& jb = j.at("branches");
    if (!jb.is_array()) throw error("expected an array of branches");
    std::vector<std::vector<Vec>> branches;
    branches.reserve(jb.size());
    for (const auto& b : jb) branches.push_back(vecs_from_json(b));
    BranchedCurve c(j.at("a").get<double>(), j.at("b").get<double>(),
                    std::move(branches));
    if (j.contains("samples") &&
        j.at("samples").get<std::size_t>() != c.sample_count())
        throw error("declared sample count disagrees with the branch data");
    return c;
}

Json to_json(const SampledCurve& c) {
    Json j;
    j["a"] = c.a;
    j["b"] = c.b;
    Json samples = Json::array();
    for (const QPoint& s : c.samples) samples.push_back(to_json(s));
    j["samples"] = std::move(samples);
    return j;
}

SampledCurve sampled_curve_from_json(const Json& j) {
    const Json& js = j.at("samples");
    if (!js.is_array()) throw error("expected an array of multiset samples");
    std::vector<QPoint> samples;
    samples.reserve(js.size());
    for (const auto& s : js) samples.push_back(qpoint_from_json(s));
    return SampledCurve(j.at("a").get<double>(), j.at("b").get<double>(),
                        std::move(samples));
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Json::parse(in);
}

void write_json(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

}  // namespace qspace
