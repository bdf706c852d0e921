#pragma once

#include <filesystem>

#include "decaylab/runner/run.hpp"

namespace decaylab::runner::detail {

// plots/energy.svg and plots/ladder.svg for a weighted trace.
void write_plots(const TraceTable& trace, const energy::WeightSequence& w, const std::vector<int>& orders,
                 const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& data);

}  // namespace decaylab::runner::detail
