#pragma once

#include <string>

#include "mstlab/experiments.hpp"

namespace mstlab {

// Canonical JSON form of a report. Contains no timestamps, hostnames, or
// worker counts: two runs of the same config must serialize byte-identically.
std::string report_to_json(const RunReport& rep);

// Writes report.json plus curve.csv / mu.csv / configs.csv / curve.svg for
// whichever analyses the report carries, into out_dir (created if missing).
void write_report_files(const RunReport& rep, const std::string& out_dir);

}  // namespace mstlab
