#include "loewner/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loewner/errors.hpp"

namespace loewner {

using nlohmann::json;

namespace {

json complex_array(const std::vector<cpx>& v)
{
    json a = json::array();
    for (const cpx& z : v) a.push_back({z.real(), z.imag()});
    return a;
}

std::vector<cpx> parse_complex_array(const json& a, const char* where)
{
    if (!a.is_array()) throw validation_error(std::string(where) + ": expected an array");
    std::vector<cpx> v;
    v.reserve(a.size());
    for (const auto& e : a) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw validation_error(std::string(where) + ": entries must be [re, im] pairs");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

json loop_json(const Loop& g)
{
    return json{{"coeffs", complex_array(g.coeffs())}, {"degree", g.degree()}};
}

Loop loop_parse(const json& j, const char* where)
{
    if (!j.is_object() || !j.contains("coeffs") || !j.contains("degree"))
        throw validation_error(std::string(where) + ": loop needs \"coeffs\" and \"degree\"");
    std::vector<cpx> c = parse_complex_array(j["coeffs"], where);
    if (!j["degree"].is_number_integer())
        throw validation_error(std::string(where) + ": \"degree\" must be an integer");
    const int M = j["degree"].get<int>();
    if (static_cast<int>(c.size()) != 2 * M + 1)
        throw validation_error(std::string(where) + ": coeffs length must equal 2*degree+1");
    return Loop(std::move(c));
}

const char* kind_name(MapKind k)
{
    switch (k) {
        case MapKind::interior_disk: return "interior-disk";
        case MapKind::exterior_disk: return "exterior-disk";
        case MapKind::annulus: return "annulus";
    }
    return "?";
}

json map_json(const ConformalMapSeries& f)
{
    json j{{"kind", kind_name(f.kind)}};
    if (f.kind == MapKind::annulus) {
        j["rho"] = f.laurent.rho;
        j["pos"] = complex_array(f.laurent.pos);
        j["neg"] = complex_array(f.laurent.neg);
    } else {
        j["domain_radius"] = f.domain_radius;
        j["coeffs"] = complex_array(f.coeffs);
    }
    return j;
}

}  // namespace

std::string loop_to_json(const Loop& g) { return loop_json(g).dump(2) + "\n"; }

Loop loop_from_json(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("loop: malformed JSON");
    return loop_parse(j, "loop");
}

std::string config_to_json(const TwoLoopConfig& cfg)
{
    json j{{"gamma1", loop_json(cfg.gamma1())}, {"gamma2", loop_json(cfg.gamma2())}};
    return j.dump(2) + "\n";
}

TwoLoopConfig config_from_json(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw validation_error("config: malformed JSON");
    if (!j.is_object() || !j.contains("gamma1") || !j.contains("gamma2"))
        throw validation_error("config: needs \"gamma1\" and \"gamma2\" loops");
    return TwoLoopConfig(loop_parse(j["gamma1"], "gamma1"), loop_parse(j["gamma2"], "gamma2"));
}

std::string uniformization_to_json(const Uniformization& u)
{
    json j{{"tau", u.tau},
           {"boundary_residual", u.boundary_residual},
           {"f1", map_json(u.f1)},
           {"fA", map_json(u.fA)},
           {"f2", map_json(u.f2)}};
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write file: " + path);
    out << content;
}

std::string format_g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}
