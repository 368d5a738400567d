// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cli/output.hpp"
#include "cubicpt/eigensolver.hpp"
#include "cubicpt/instability.hpp"
#include "cubicpt/semiclassics.hpp"
#include "cubicpt/stokes.hpp"
#include "cubicpt/sweep.hpp"

namespace cubicpt::cli {

Json constants_json();
CsvTable constants_csv(const Json& j);

Json instability_json(const InstabilityRecord& r);
InstabilityRecord instability_from_json(const Json& j);
std::vector<std::string> instability_csv_header();
void instability_csv_row(CsvTable& t, const Json& j);

Json fit_json(const GrowthFit& f);

Json eigen_json(const EigenRecord& r);

Json path_json(const ComplexPath& p);
Json line_json(const StokesLine& l);
Json diagram_json(const StokesDiagram& d);

Json sweep_json(const SweepResult& s);

// Real-line samples as little-endian float64 sextuples (Re x, Im x, Re psi, Im psi, Re psi', Im psi').
std::string samples_binary(const std::vector<GridSample>& s);

}  // namespace cubicpt::cli
