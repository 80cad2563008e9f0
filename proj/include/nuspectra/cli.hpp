#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuspectra/catalog.hpp"

namespace nuspectra::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, InvalidInput = 2, NotBound = 3 };

enum class Format { Json, Csv };

struct RunConfig {
    std::string potential;
    Params params;
    std::optional<std::pair<int, int>> levels;
    Format format = Format::Json;
    std::string output; ///< empty for standard output
};

/// "k=v" into the map; throws InvalidParams on malformed text or duplicate keys.
Params parse_params(const std::vector<std::string>& items);
/// "a..b" or a single level "n".
std::pair<int, int> parse_levels(const std::string& text);

/// Integer levels requested by the config, defaulting to the first ten
/// (clipped to the level-count rule).
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);

struct GridFlags {
    std::optional<double> from, to;
    int points = 201;
    int figure = 0; ///< 1 or 2 selects a preset dataset and ignores the config
};
int cmd_wavefunction(const RunConfig& config, const GridFlags& grid, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& scope, const std::string& tolerances, Format format, const std::string& output,
               std::ostream& out, std::ostream& err);
int cmd_tables(const std::string& potential, Format format, const std::string& output, std::ostream& out,
               std::ostream& err);
int cmd_molecules(Format format, const std::string& output, std::ostream& out, std::ostream& err);
int cmd_list(Format format, const std::string& output, std::ostream& out, std::ostream& err);

/// Full command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nuspectra::cli
