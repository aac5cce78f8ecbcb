#pragma once

#include <string>

#include <json.hpp>

namespace calgeo::cli {

struct RunResult {
    int exit_code = 0;
    std::string output;  // report bytes (text or records)
    std::string error;   // diagnostics for nonzero exit
};

// Executes a run manifest. Relative input paths resolve against base_dir.
// Exit codes: 0 success, 1 demanded property failed, 2 input error.
RunResult run_manifest(const nlohmann::json& manifest, const std::string& base_dir);
RunResult run_manifest_file(const std::string& path);

int main_entry(int argc, char** argv);

}  // namespace calgeo::cli
