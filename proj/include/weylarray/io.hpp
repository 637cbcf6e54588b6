#pragma once

#include <cstdint>
#include <string>

#include "weylarray/slab.hpp"
#include "weylarray/weyl.hpp"

namespace weylarray {

inline constexpr const char* kVersion = "0.1.0";

namespace io {

/// Locale-independent shortest round-trip float formatting.
std::string fmt(double v);

/// FNV-1a 64-bit, used for the config hash embedded in outputs.
std::uint64_t fnv1a(const std::string& s);

/// Write via temporary file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& content);

/// Leading '#' comment lines embedded in every CSV: config hash + version.
std::string csv_metadata(const std::string& config_hash);

std::string bands_csv(const std::vector<BandTableRow>& rows, const std::string& meta);
std::string dos_csv(const DosHistogram& h, const std::string& meta);
std::string contours_csv(const std::vector<ContourLine>& lines, const std::string& meta);
std::string phase_diagram_csv(const PhaseDiagram& pd, const std::string& meta);
std::string arcs_csv(const FermiArcResult& arcs, const std::string& meta);
std::string slab_sites_csv(const SlabModel& slab, const std::string& meta);

std::string bands_json(const std::vector<BandTableRow>& rows,
                       const std::string& config_hash);
std::string weyl_json(const std::vector<WeylNode>& nodes, double a_over_lambda,
                      double muB, const std::string& config_hash);
std::string phase_diagram_json(const PhaseDiagram& pd, const std::string& config_hash);
std::string error_json(const std::string& command, const std::string& type,
                       const std::string& message);
std::string convergence_report_json(const ConvergenceReport& rep);

} // namespace io
} // namespace weylarray
