// io.hpp - CSV emitters and the JSON run manifest

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavsim/dynamics.hpp"
#include "cavsim/grid.hpp"
#include "cavsim/scenario.hpp"

#ifndef CAVSIM_VERSION
#define CAVSIM_VERSION "0.0.0"
#endif

namespace cavsim {

inline constexpr const char* kCodeVersion = CAVSIM_VERSION;

// Column-oriented CSV table with a one-line header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_column(const std::string& name, std::vector<double> values)
    {
        header_.push_back(name);
        columns_.push_back(std::move(values));
    }

    void set_columns(std::vector<std::vector<double>> columns)
    {
        if (columns.size() != header_.size()) throw std::invalid_argument("CsvTable: column count mismatch");
        columns_ = std::move(columns);
    }

    void write(const std::filesystem::path& path) const
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write(out);
    }

    void write(std::ostream& out) const
    {
        for (std::size_t c = 0; c < header_.size(); ++c) out << (c ? "," : "") << header_[c];
        out << '\n';
        const std::size_t rows = columns_.empty() ? 0 : columns_.front().size();
        out << std::setprecision(12);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c][r];
            out << '\n';
        }
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> columns_;
};

inline CsvTable trajectory_table(const Trajectory& tr)
{
    if (tr.model == Model::master) {
        CsvTable t({"t", "rho11", "rho22", "rho33", "rho44", "purity"});
        t.set_columns({tr.t, tr.P_g, tr.P_e, tr.P_photon, tr.n_leaked, tr.purity});
        return t;
    }
    CsvTable t({"t", "P_g", "P_e", "P_photon", "n_leaked"});
    t.set_columns({tr.t, tr.P_g, tr.P_e, tr.P_photon, tr.n_leaked});
    return t;
}

inline CsvTable spectrum_table(const Spectrum& s)
{
    CsvTable t({"omega", "density", "grid_native_prob"});
    t.set_columns({s.omega, s.density, s.grid_native});
    return t;
}

// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string config_hash(const ScenarioConfig& cfg)
{
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << fnv1a(to_json(cfg).dump());
    return s.str();
}

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::string code_version{kCodeVersion};
    double wall_time{0.0};
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;
    nlohmann::json metrics = nlohmann::json::object();

    nlohmann::json to_json() const
    {
        return {{"command", command},       {"config_hash", config_hash}, {"code_version", code_version},
                {"wall_time_s", wall_time}, {"outputs", outputs},         {"warnings", warnings},
                {"metrics", metrics}};
    }

    void write(const std::filesystem::path& path) const
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << to_json().dump(2) << '\n';
    }
};

} // namespace cavsim
