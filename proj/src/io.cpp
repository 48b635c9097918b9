#include "socbec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "socbec/error.hpp"

namespace socbec {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    return out;
}

void check_written(const std::ofstream& out, const std::filesystem::path& path) {
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

} // namespace

std::string format_real(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void validate_record(const TrajectoryRecord& r) {
    const double fields[] = {r.t, r.purity, r.sx, r.sy, r.sz, r.x_sz, r.width, r.norm, r.energy, r.d};
    for (double v : fields) {
        if (!std::isfinite(v)) throw NumericalError("non-finite value in trajectory row at t = " + format_real(r.t));
    }
    const double s2 = r.sx * r.sx + r.sy * r.sy + r.sz * r.sz;
    if (std::abs(r.purity - s2) > 1e-10) {
        throw NumericalError("purity " + format_real(r.purity) + " != |s|^2 " + format_real(s2) +
                             " at t = " + format_real(r.t));
    }
    if (r.purity < 0.0 || r.purity > 1.0) {
        throw NumericalError("purity outside [0, 1] at t = " + format_real(r.t));
    }
    for (double s : {r.sx, r.sy, r.sz}) {
        if (std::abs(s) > 1.0 + 1e-12) throw NumericalError("spin component outside [-1, 1] at t = " + format_real(r.t));
    }
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRecord> records) {
    out << trajectory_header << '\n';
    for (const auto& r : records) {
        validate_record(r);
        out << format_real(r.t) << ',' << format_real(r.purity) << ',' << format_real(r.sx) << ','
            << format_real(r.sy) << ',' << format_real(r.sz) << ',' << format_real(r.x_sz) << ','
            << format_real(r.width) << ',' << format_real(r.norm) << ',' << format_real(r.energy) << ','
            << format_real(r.d) << '\n';
    }
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectoryRecord> records) {
    auto out = open_for_write(path);
    write_trajectory_csv(out, records);
    check_written(out, path);
}

std::vector<TrajectoryRecord> read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != trajectory_header) {
        throw ConfigError("unexpected trajectory header in '" + path.string() + "'");
    }
    std::vector<TrajectoryRecord> records;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 10) {
            throw ConfigError("row " + std::to_string(row) + " of '" + path.string() + "' has " +
                              std::to_string(v.size()) + " columns, expected 10");
        }
        records.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9]});
    }
    return records;
}

void write_snapshot_csv(std::ostream& out, const SpinorField& state) {
    out << snapshot_header << '\n';
    const auto x = state.grid->x();
    for (std::size_t j = 0; j < state.size(); ++j) {
        out << format_real(x[j]) << ',' << format_real(state.up[j].real()) << ',' << format_real(state.up[j].imag())
            << ',' << format_real(state.down[j].real()) << ',' << format_real(state.down[j].imag()) << '\n';
    }
}

void write_snapshot_csv(const std::filesystem::path& path, const SpinorField& state) {
    auto out = open_for_write(path);
    write_snapshot_csv(out, state);
    check_written(out, path);
}

void write_profile_csv(const std::filesystem::path& path, const SpatialGrid& grid, std::span<const double> psi) {
    auto out = open_for_write(path);
    out << profile_header << '\n';
    const auto x = grid.x();
    for (std::size_t j = 0; j < psi.size(); ++j) out << format_real(x[j]) << ',' << format_real(psi[j] * psi[j]) << '\n';
    check_written(out, path);
}

void write_json(const std::filesystem::path& path, const Json& document) {
    auto out = open_for_write(path);
    out << document.dump(2) << '\n';
    check_written(out, path);
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    return Json::parse(in);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace socbec
