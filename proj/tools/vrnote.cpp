// Copyright 2026 The vrnote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// vrnote command-line tool: serve, bench, replay, export-frames.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vrnote/bench.hpp"
#include "vrnote/config.hpp"
#include "vrnote/error.hpp"
#include "vrnote/image.hpp"
#include "vrnote/server.hpp"
#include "vrnote/session.hpp"
#include "vrnote/stylus_sim.hpp"

namespace {

vrnote::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vrnote::Error(vrnote::ErrorCode::kInvalidArgument, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int serve(const vrnote::AppConfig& cfg, const std::string& host, int port) {
  vrnote::Server server(cfg);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;
  const bool ok = server.run();
  g_server = nullptr;
  return ok ? 0 : 1;
}

int bench(const vrnote::AppConfig& cfg, const std::string& scenario, int frames,
          std::uint64_t seed, const std::string& out) {
  vrnote::BenchConfig bench_cfg = cfg.bench();
  bench_cfg.seed = seed;
  const vrnote::BenchReport report = vrnote::bench_tracking(scenario, frames, bench_cfg);
  if (!out.empty()) {
    const std::filesystem::path parent = std::filesystem::path(out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream file(out);
    if (!file) throw vrnote::Error(vrnote::ErrorCode::kInvalidArgument, "cannot write " + out);
    file << vrnote::bench_csv(report);
  }
  std::cout << vrnote::bench_summary(report).dump(2) << std::endl;
  return 0;
}

int replay(const std::string& path, bool verify) {
  const vrnote::ReplayResult r = vrnote::replay_document(read_file(path));
  const vrnote::NoteState& s = r.session.state();
  std::size_t strokes = 0;
  std::size_t pictures = 0;
  for (const auto& page : s.notebook.pages) {
    strokes += page.strokes.size();
    pictures += page.pictures.size();
  }
  std::cout << "events " << r.session.log().size() << ", pages " << s.notebook.pages.size()
            << ", strokes " << strokes << ", pictures " << pictures << "\n";
  if (!r.consistent) {
    std::cout << "divergent at seq " << *r.divergent_seq << ": " << r.detail << "\n";
    return verify ? 2 : 0;
  }
  if (verify) std::cout << "verified: replay matches the stored notebook\n";
  return 0;
}

int export_frames(const vrnote::AppConfig& cfg, const std::string& scenario, int frames,
                  std::uint64_t seed, const std::string& dir) {
  if (frames < 1) throw vrnote::Error(vrnote::ErrorCode::kInvalidArgument, "frames must be >= 1");
  const vrnote::SimScenario sc = vrnote::make_scenario(scenario, seed);
  std::filesystem::create_directories(dir);
  std::ofstream truth(std::filesystem::path(dir) / "truth.csv");
  truth << "frame,tip_x_m,tip_y_m,tip_z_m,axis_x,axis_y,axis_z,hover\n";
  for (int i = 0; i < frames; ++i) {
    const vrnote::SimFrame f = vrnote::simulate_frame(sc, i, cfg.sim);
    char name[64];
    std::snprintf(name, sizeof(name), "%05d", i);
    vrnote::write_pgm(f.stereo.left, std::filesystem::path(dir) / (std::string(name) + "_left.pgm"));
    vrnote::write_pgm(f.stereo.right, std::filesystem::path(dir) / (std::string(name) + "_right.pgm"));
    const auto& t = f.stereo.truth;
    char row[256];
    std::snprintf(row, sizeof(row), "%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n", i, t.tip.x(),
                  t.tip.y(), t.tip.z(), t.axis.x(), t.axis.y(), t.axis.z(),
                  f.tablet.hover ? 1 : 0);
    truth << row;
  }
  std::cout << "wrote " << frames << " stereo pairs to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vrnote: stylus tracking and lecture note sessions"};
  app.require_subcommand(1);

  std::string host = "127.0.0.1";
  int port = -1;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
  serve_cmd->add_option("--port", port, "Port to listen on (default from config)");
  serve_cmd->add_option("--host", host, "Interface to bind");

  std::string scenario = "write";
  int frames = 1000;
  std::uint64_t seed = 1;
  std::string out;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark tracking on a simulated scenario");
  bench_cmd->add_option("--scenario", scenario, "write, lift or shake");
  bench_cmd->add_option("--frames", frames, "Number of frames");
  bench_cmd->add_option("--seed", seed, "Simulator seed");
  bench_cmd->add_option("--out", out, "Per-frame CSV report");

  std::string file;
  bool verify = false;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a session document");
  replay_cmd->add_option("file", file, "Session document")->required();
  replay_cmd->add_flag("--verify", verify, "Fail unless replay reproduces the notebook");

  std::string dir;
  int export_count = 60;
  auto* export_cmd = app.add_subcommand("export-frames", "Write simulated stereo frames as PGM");
  export_cmd->add_option("--scenario", scenario, "write, lift or shake");
  export_cmd->add_option("--dir", dir, "Output directory")->required();
  export_cmd->add_option("--frames", export_count, "Number of frames");
  export_cmd->add_option("--seed", seed, "Simulator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    const vrnote::AppConfig cfg = vrnote::config_from_env();
    if (*serve_cmd) return serve(cfg, host, port >= 0 ? port : cfg.port);
    if (*bench_cmd) return bench(cfg, scenario, frames, seed, out);
    if (*replay_cmd) return replay(file, verify);
    if (*export_cmd) return export_frames(cfg, scenario, export_count, seed, dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
