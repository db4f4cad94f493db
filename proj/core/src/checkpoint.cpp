#include "mhdshell/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhdshell/errors.hpp"

namespace mhdshell::io {

namespace {

using json = nlohmann::json;

const char* kMagic = "mhdshell-ckpt";

bool host_little_endian() { return std::endian::native == std::endian::little; }

void write_block(std::ofstream& f, const std::vector<double>& v) {
  f.write(reinterpret_cast<const char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_block(std::ifstream& f, std::vector<double>& v, std::size_t n) {
  v.assign(n, 0.0);
  f.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!f) throw CheckpointError("checkpoint truncated: payload shorter than the metadata declares");
}

}  // namespace

void write_checkpoint(const std::string& path, const splitting::CoupledState& state,
                      const splitting::ParameterLadder& ladder) {
  if (!host_little_endian())
    throw CheckpointError("checkpoint writer requires a little-endian host");
  json meta;
  meta["magic"] = kMagic;
  meta["version"] = 1;
  meta["endianness"] = "little";
  meta["grid_n"] = state.fluid.grid.n;
  meta["box_halfwidth"] = state.fluid.grid.halfwidth;
  meta["time"] = state.fluid.t;
  meta["shell_time"] = state.shell.t;
  meta["window"] = state.window;
  meta["shell_nodes"] = state.shell.size();
  meta["buffer_markers"] = state.buffer.marker_vn.size();
  meta["ladder"] = {{"dt", ladder.dt},
                    {"delta", ladder.delta()},
                    {"xi", ladder.xi()},
                    {"alpha1", ladder.alpha1},
                    {"alpha2", ladder.alpha2}};
  meta["cumulative"] = {{"shell_dissipation", state.cum.shell_dissipation},
                        {"fluid_dissipation", state.cum.fluid_dissipation},
                        {"exterior_dissipation", state.cum.exterior_dissipation},
                        {"sink", state.cum.sink},
                        {"floored", state.cum.floored},
                        {"mismatch_integral", state.cum.mismatch_integral}};
  meta["fields"] = {"rho", "b", "mom_x", "mom_y", "qth", "shell_w", "shell_v",
                    "shell_theta", "buffer_vn"};

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CheckpointError("cannot open checkpoint '" + path + "' for writing");
  f << meta.dump() << "\n";
  write_block(f, state.fluid.rho);
  write_block(f, state.fluid.b);
  write_block(f, state.fluid.mom_x);
  write_block(f, state.fluid.mom_y);
  write_block(f, state.fluid.qth);
  write_block(f, state.shell.w);
  write_block(f, state.shell.v);
  write_block(f, state.shell.theta);
  write_block(f, state.buffer.marker_vn);
  if (!f) throw CheckpointError("checkpoint write failed for '" + path + "'");
}

splitting::CoupledState read_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot open checkpoint '" + path + "'");
  std::string line;
  if (!std::getline(f, line)) throw CheckpointError("checkpoint missing metadata line");
  json meta;
  try {
    meta = json::parse(line);
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("checkpoint metadata is not valid JSON: ") + e.what());
  }
  if (meta.value("magic", "") != kMagic)
    throw CheckpointError("checkpoint magic mismatch: not an mhdshell checkpoint");
  if (meta.value("endianness", "") != "little" || !host_little_endian())
    throw CheckpointError("checkpoint endianness mismatch");

  splitting::CoupledState st;
  const int n = meta.at("grid_n").get<int>();
  const double hw = meta.at("box_halfwidth").get<double>();
  st.fluid.grid = geometry::Grid{n, hw};
  st.fluid.t = meta.at("time").get<double>();
  st.shell.t = meta.at("shell_time").get<double>();
  st.window = meta.at("window").get<std::size_t>();
  const std::size_t cells = st.fluid.grid.cells();
  const std::size_t nodes = meta.at("shell_nodes").get<std::size_t>();
  const std::size_t markers = meta.at("buffer_markers").get<std::size_t>();
  const auto& cum = meta.at("cumulative");
  st.cum.shell_dissipation = cum.at("shell_dissipation").get<double>();
  st.cum.fluid_dissipation = cum.at("fluid_dissipation").get<double>();
  st.cum.exterior_dissipation = cum.at("exterior_dissipation").get<double>();
  st.cum.sink = cum.at("sink").get<double>();
  st.cum.floored = cum.at("floored").get<double>();
  st.cum.mismatch_integral = cum.at("mismatch_integral").get<double>();

  read_block(f, st.fluid.rho, cells);
  read_block(f, st.fluid.b, cells);
  read_block(f, st.fluid.mom_x, cells);
  read_block(f, st.fluid.mom_y, cells);
  read_block(f, st.fluid.qth, cells);
  read_block(f, st.shell.w, nodes);
  read_block(f, st.shell.v, nodes);
  read_block(f, st.shell.theta, nodes);
  read_block(f, st.buffer.marker_vn, markers);
  // Anything left over means the metadata does not describe this payload.
  char probe;
  f.read(&probe, 1);
  if (!f.eof()) throw CheckpointError("checkpoint metadata mismatch: trailing payload bytes");
  return st;
}

}  // namespace mhdshell::io
