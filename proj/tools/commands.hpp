#pragma once

#include <CLI11.hpp>

namespace grasslearn::cli {

void register_dist(CLI::App& app);
void register_cluster(CLI::App& app);
void register_complete(CLI::App& app);
void register_adapt(CLI::App& app);
void register_gda(CLI::App& app);
void register_grnet(CLI::App& app);
void register_gen(CLI::App& app);
void register_verify(CLI::App& app);

}  // namespace grasslearn::cli
