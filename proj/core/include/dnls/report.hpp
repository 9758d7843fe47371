#pragma once

#include <string>
#include <vector>

#include "dnls/dynamics.hpp"
#include "dnls/lattice.hpp"

namespace dnls {

// All CSV output uses "%.17g" (full round trip for doubles), LF endings and
// a fixed evaluation order, so repeated runs are byte identical.
std::string format_g17(double v);

void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::vector<double>>& rows);

// Columns x,re,im over the window.
void write_field_csv(const std::string& path, const Window& w, const Field& f);

Field read_field_csv(const std::string& path, const Window& w);

// Directory layout: meta.json, index.csv (k,t,file) and one field CSV per
// snapshot.
void save_trajectory(const std::string& dir, const Window& w, const Trajectory& traj);

}  // namespace dnls
