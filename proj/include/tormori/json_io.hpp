#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tormori/divisor.hpp"
#include "tormori/fan.hpp"
#include "tormori/morphism.hpp"

namespace tormori {

using json = nlohmann::ordered_json;

namespace detail {

inline long long to_int64(const Int& x) {
    if (x > Int(std::numeric_limits<long long>::max()) ||
        x < Int(std::numeric_limits<long long>::min()))
        throw Error("integer too large for serialization");
    return x.convert_to<long long>();
}

inline json cones_to_json(const std::vector<Cone>& cs) {
    json arr = json::array();
    for (const Cone& c : cs) arr.push_back(c.rays);
    return arr;
}

inline std::vector<Cone> cones_from_json(const json& arr) {
    std::vector<Cone> out;
    for (const auto& item : arr) {
        std::vector<int> rays;
        for (const auto& r : item) rays.push_back(r.get<int>());
        out.push_back(Cone(std::move(rays)));
    }
    return out;
}

}  // namespace detail

inline json fan_to_json(const Fan& f) {
    json j;
    j["rank"] = f.rank;
    json rays = json::array();
    for (const auto& r : f.rays) {
        json row = json::array();
        for (const Int& x : r) row.push_back(detail::to_int64(x));
        rays.push_back(std::move(row));
    }
    j["rays"] = std::move(rays);
    j["max_cones"] = detail::cones_to_json(f.max_cones);
    if (!f.general_cones.empty())
        j["general_cones"] = detail::cones_to_json(f.general_cones);
    return j;
}

inline Fan fan_from_json(const json& j) {
    Fan f;
    f.rank = j.at("rank").get<int>();
    for (const auto& row : j.at("rays")) {
        LatticeVector v;
        for (const auto& x : row) v.push_back(Int(x.get<long long>()));
        f.rays.push_back(std::move(v));
    }
    f.max_cones = detail::cones_from_json(j.at("max_cones"));
    if (j.contains("general_cones"))
        f.general_cones = detail::cones_from_json(j.at("general_cones"));
    return f;
}

inline json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(detail::to_int64(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix matrix_from_json(const json& j, int cols_if_empty) {
    std::vector<std::vector<long long>> rows;
    for (const auto& row : j) rows.push_back(row.get<std::vector<long long>>());
    int r = int(rows.size());
    int c = r ? int(rows[0].size()) : cols_if_empty;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[i].size()) != c) throw Error("ragged matrix");
        for (int j2 = 0; j2 < c; ++j2) m.at(i, j2) = Int(rows[i][j2]);
    }
    return m;
}

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path.string());
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path.string());
    out << j.dump(2) << "\n";
}

inline Fan load_fan(const std::filesystem::path& path) {
    return fan_from_json(load_json_file(path));
}

// Morphism files carry the matrix plus either inline fan objects or paths
// (resolved relative to the morphism file's directory).
inline FanMorphism load_morphism(const std::filesystem::path& path) {
    json j = load_json_file(path);
    auto fan_of = [&](const json& field) {
        if (field.is_string()) {
            std::filesystem::path p = field.get<std::string>();
            if (p.is_relative()) p = path.parent_path() / p;
            return load_fan(p);
        }
        return fan_from_json(field);
    };
    FanMorphism m;
    m.source = fan_of(j.at("source"));
    m.target = fan_of(j.at("target"));
    m.matrix = matrix_from_json(j.at("matrix"), m.source.rank);
    return m;
}

inline json divisor_to_json(const TorusDivisor& d) {
    json coeffs = json::object();
    for (std::size_t i = 0; i < d.coeffs.size(); ++i)
        if (d.coeffs[i] != 0) coeffs[std::to_string(i)] = to_string(d.coeffs[i]);
    json j;
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline TorusDivisor divisor_from_json(const json& j, const Fan& f) {
    TorusDivisor d = TorusDivisor::zero(f);
    for (const auto& [key, value] : j.at("coeffs").items()) {
        int idx = -1;
        try {
            idx = std::stoi(key);
        } catch (const std::exception&) {
            throw Error("divisor coefficient key is not a ray index: " + key);
        }
        if (idx < 0 || idx >= f.ray_count())
            throw Error("divisor ray index out of range: " + key);
        if (value.is_number_integer())
            d.coeffs[idx] = Rat(Int(value.get<long long>()));
        else
            d.coeffs[idx] = parse_rational(value.get<std::string>());
    }
    return d;
}

}  // namespace tormori
