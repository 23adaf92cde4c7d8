#include "bgx/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bgx {

using nlohmann::json;

namespace {

json blade_json(Blade b) { return b.indices(); }

Blade blade_from(const json& j) { return Blade::from_indices(j.get<std::vector<int>>()); }

void check_header(const json& j, const char* kind) {
    if (j.value("format", "") != "bgx-field") throw std::invalid_argument("not a bgx-field document");
    if (j.value("version", 0) != 1) throw std::invalid_argument("unsupported bgx-field version");
    if (j.value("kind", "") != kind) throw std::invalid_argument(std::string("expected kind ") + kind);
}

}  // namespace

json to_json(const PolyGaussField& u) {
    json j;
    j["format"] = "bgx-field";
    j["version"] = 1;
    j["kind"] = "polygauss";
    j["n"] = u.dim();
    j["p"] = u.degree();
    j["sigma"] = u.sigma();
    json beta = json::array();
    for (const cplx& b : u.beta()) beta.push_back({b.real(), b.imag()});
    j["beta"] = beta;
    j["gamma"] = {u.gamma().real(), u.gamma().imag()};
    json comps = json::array();
    for (const auto& [b, q] : u.components()) {
        json terms = json::array();
        for (const auto& [m, c] : q.terms()) {
            std::vector<int> e(m.e.begin(), m.e.begin() + u.dim());
            terms.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
        }
        comps.push_back({{"blade", blade_json(b)}, {"terms", terms}});
    }
    j["components"] = comps;
    return j;
}

PolyGaussField polygauss_from_json(const json& j) {
    check_header(j, "polygauss");
    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    PolyGaussField u(n, p, j.at("sigma").get<double>());
    std::vector<cplx> beta;
    for (const auto& b : j.at("beta")) beta.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
    const cplx gamma(j.at("gamma").at(0).get<double>(), j.at("gamma").at(1).get<double>());
    u.set_envelope(u.sigma(), beta, gamma);
    for (const auto& c : j.at("components")) {
        Poly q(n);
        for (const auto& t : c.at("terms")) {
            const auto e = t.at("exp").get<std::vector<int>>();
            if (static_cast<int>(e.size()) != n) throw std::invalid_argument("exponent length mismatch");
            Mono m;
            for (int k = 0; k < n; ++k) m.e[k] = static_cast<std::int8_t>(e[k]);
            q.add_term(m, cplx(t.at("re").get<double>(), t.at("im").get<double>()));
        }
        u.add(blade_from(c.at("blade")), q);
    }
    return u;
}

json to_json(const GridField& u) {
    json j;
    j["format"] = "bgx-field";
    j["version"] = 1;
    j["kind"] = "grid";
    j["n"] = u.dim();
    j["p"] = u.degree();
    j["L"] = u.half_width();
    j["N"] = u.points_per_axis();
    j["domain"] = u.domain() == Domain::physical ? "physical" : "spectral";
    json blades = json::array();
    for (const Blade& b : basis_blades(u.dim(), u.degree())) blades.push_back(blade_json(b));
    j["blades"] = blades;
    std::vector<double> flat;
    flat.reserve(2 * u.data().size());
    for (const cplx& v : u.data()) {
        flat.push_back(v.real());
        flat.push_back(v.imag());
    }
    j["data"] = flat;
    return j;
}

GridField grid_from_json(const json& j) {
    check_header(j, "grid");
    const std::string dom = j.at("domain").get<std::string>();
    if (dom != "physical" && dom != "spectral") throw std::invalid_argument("unknown domain tag");
    GridField u(j.at("n").get<int>(), j.at("p").get<int>(), j.at("L").get<double>(),
                j.at("N").get<int>(), dom == "physical" ? Domain::physical : Domain::spectral);
    const auto flat = j.at("data").get<std::vector<double>>();
    if (flat.size() != 2 * u.data().size()) throw std::invalid_argument("grid payload size mismatch");
    for (std::size_t i = 0; i < u.data().size(); ++i) u.data()[i] = cplx(flat[2 * i], flat[2 * i + 1]);
    return u;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << content;
        os.flush();
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace bgx
