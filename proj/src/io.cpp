#include "nclandau/io.hpp"
#include "nclandau/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace nclandau {

std::string format_number(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

PhysParams params_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("parameter file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("parameter file must be a JSON object");

    PhysParams p;
    const auto take = [&j](const char* key, double& slot) {
        if (j.contains(key)) {
            if (!j.at(key).is_number())
                throw ValidationError(std::string("parameter '") + key + "' must be a number");
            slot = j.at(key).get<double>();
        }
    };
    take("mass", p.mass);
    take("omega0", p.omega0);
    take("omega_c", p.omega_c);
    take("theta", p.theta);
    take("hbar", p.hbar);
    take("e_charge", p.e_charge);
    take("c_light", p.c_light);
    take("E1", p.E1);
    take("E2", p.E2);

    static const char* known[] = {"mass",     "omega0", "omega_c", "theta", "hbar",
                                  "e_charge", "c_light", "E1",      "E2"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw ValidationError("unknown parameter key: " + it.key());
    }
    p.validate();
    return p;
}

PhysParams params_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open parameter file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return params_from_json_text(buf.str());
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    line += '\n';
    return line;
}

} // namespace nclandau
