#pragma once

#include <string>

#include <json.hpp>

namespace iso {

/// Exit-code contract shared by all isolab subcommands.
enum ExitCode {
    kExitOk = 0,
    kExitCheckFailed = 1,   // some lemma/theorem check failed
    kExitBadManifest = 2,   // manifest/schema/usage error
    kExitOverflow = 3,      // budget overflow under --strict
};

/// FNV-1a 64-bit hash, hex-encoded; used to name report files after the
/// manifest that produced them.
std::string fnv1a_hex(const std::string& data);

/// Standard report envelope. `params` is the canonicalized subcommand input
/// (its hash becomes the manifest hash); `records` is the per-case payload.
/// Adds a pass/fail rollup by scanning records for "pass" (bool) and
/// "status" (string) fields at any depth.
nlohmann::json make_report(const std::string& subcommand, const nlohmann::json& params,
                           const nlohmann::json& records, long long elapsed_ms);

/// True when the report's rollup counted no failures.
bool report_passed(const nlohmann::json& report);

/// Render rows (array of flat objects) as an aligned text table over the
/// given columns; missing fields print as "-".
std::string pretty_table(const nlohmann::json& rows, const std::vector<std::string>& columns);

/// Resolve the output path: `out_flag` verbatim when nonempty, otherwise
/// <dir>/<subcommand>-<hash>.json with dir from $ISOLAB_OUT_DIR or ".".
std::string report_path(const std::string& subcommand, const std::string& hash,
                        const std::string& out_flag);

/// Serialize the report to `path` (2-space indent, trailing newline).
void write_report(const nlohmann::json& report, const std::string& path);

}  // namespace iso
