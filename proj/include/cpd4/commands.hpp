#pragma once

#include <ostream>

#include "cpd4/config.hpp"
#include "cpd4/report.hpp"

namespace cpd4 {

// Command pipelines behind the CLI.  Each returns the process exit code and
// writes its artifacts under cfg.out_dir: generate -> grid.csv,
// verify -> report.json, invariants -> invariants.json,
// export-mesh -> mesh.obj + mesh.csv.  Human-readable status goes to `out`
// (`err` for warnings).  Configuration and recipe errors propagate as
// exceptions for the CLI shell to translate into exit code 2.
int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_export_mesh(const RunConfig& cfg, std::ostream& out,
                    std::ostream& err);

// The verify report assembled in memory (used by cmd_verify and by tests
// that need the document without touching the filesystem).
ReportDocument verify_document(const RunConfig& cfg);

// Likewise for the invariants report.
ReportDocument invariants_document(const RunConfig& cfg);

// Exit code associated with a verify verdict string.
int verdict_exit_code(const std::string& verdict);

}  // namespace cpd4
