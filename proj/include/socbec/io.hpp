#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "socbec/dynamics.hpp"

namespace socbec {

using Json = nlohmann::ordered_json;

inline constexpr const char* trajectory_header = "t,P,sx,sy,sz,x_sz,width,norm,energy,d";
inline constexpr const char* snapshot_header = "x,re_up,im_up,re_down,im_down";
inline constexpr const char* profile_header = "x,density";

/// "%.17g"
std::string format_real(double value);

/// Throws NumericalError when a row breaks the spin invariants
/// (P = |s|^2 to 1e-10, P in [0, 1], |s_i| <= 1) or holds a non-finite value.
void validate_record(const TrajectoryRecord& record);

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryRecord> records);
void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectoryRecord> records);
/// Parses a file written by write_trajectory_csv; throws ConfigError on a
/// header or column-count mismatch.
std::vector<TrajectoryRecord> read_trajectory_csv(const std::filesystem::path& path);

void write_snapshot_csv(std::ostream& out, const SpinorField& state);
void write_snapshot_csv(const std::filesystem::path& path, const SpinorField& state);

void write_profile_csv(const std::filesystem::path& path, const SpatialGrid& grid, std::span<const double> psi);

/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& document);
Json read_json(const std::filesystem::path& path);

/// Whole-file read, used for determinism checks.
std::string read_text(const std::filesystem::path& path);

} // namespace socbec
