// Acceptance checks: one PASS/FAIL line per criterion.
//   usage: wm_acceptance <test data dir> <path to wm>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "client.hpp"
#include "oracles.hpp"
#include "scenes.hpp"
#include "wm/interact.hpp"
#include "wm/replay.hpp"
#include "wm/scene_io.hpp"
#include "wm/server.hpp"
#include "wm/session.hpp"
#include "wm/trace.hpp"
#include "wm/trajectory.hpp"

using wm::Vec3;

namespace {

std::string g_data;
std::string g_wm;

std::string read_file(const std::string& name) {
  std::ifstream in(g_data + "/" + name);
  if (!in) throw std::runtime_error("cannot open " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(const char* tier, const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << tier << "] " << name << "  (" << o.detail << "; "
            << fmt("%.1f", seconds) << " s)" << std::endl;
  if (!o.pass && std::string(tier) == "primary") ++g_failures;
}


struct Run {
  int status;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = "'" + g_wm + "' " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) throw std::runtime_error("popen failed");
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof(buf), p) != nullptr) out += buf;
  const int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

// --- raycast -------------------------------------------------------------

wm::Scene random_scene(std::mt19937_64& rng, std::size_t triangle_budget) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> size(0.1, 0.8);
  std::uniform_int_distribution<int> kind(0, 3);
  wm::Scene scene;
  std::size_t triangles = 0;
  for (int i = 0; triangles < triangle_budget; ++i) {
    wm::SceneNode n;
    const Vec3 c{pos(rng), pos(rng), 4.0 + pos(rng)};
    switch (kind(rng)) {
      case 0: n = fixture::sphere_node("", c, size(rng), 16, 32); break;
      case 1: n = fixture::box_node("", c, {size(rng), size(rng), size(rng)}); break;
      case 2: {
        wm::TriMesh m;
        std::uniform_real_distribution<double> off(-0.5, 0.5);
        for (int t = 0; t < 400; ++t) {
          const Vec3 base{off(rng), off(rng), off(rng)};
          const auto b = static_cast<std::uint32_t>(m.vertices.size());
          for (int k = 0; k < 3; ++k) m.vertices.push_back(base + Vec3{off(rng), off(rng), off(rng)} * 0.3);
          m.triangles.push_back({b, b + 1, b + 2});
        }
        n = fixture::mesh_node("", std::move(m), c);
        break;
      }
      default: n = fixture::panel_node("", c, size(rng) * 2, size(rng) * 2, 100, 100); break;
    }
    n.id = "n" + std::to_string(i);
    n.transform.rotation = wm::Quat::from_axis_angle(oracle::random_unit(rng), pos(rng));
    if (!n.is_panel()) n.transform.scale = {1.0 + size(rng), 1.0, 1.0 + size(rng) * 0.5};
    const std::size_t count = wm::build_world_geometry(n).mesh.triangles.size();
    if (triangles + count > triangle_budget) break;
    triangles += count;
    scene.add_node(n);
  }
  return scene;
}

Outcome raycast_equivalence() {
  using clock = std::chrono::steady_clock;
  std::mt19937_64 rng(1001);
  std::size_t rays = 0, hits = 0, mismatches = 0, max_tris = 0;
  double bvh_seconds = 0.0;
  const auto start = clock::now();
  for (int s = 0; s < 10; ++s) {
    const wm::Scene scene = random_scene(rng, 10000);
    // Oracle geometry: world meshes built once per scene, scanned linearly.
    std::vector<wm::WorldGeometry> worlds;
    std::size_t tris = 0;
    for (const auto& n : scene.nodes()) {
      worlds.push_back(wm::build_world_geometry(n));
      tris += worlds.back().mesh.triangles.size();
    }
    max_tris = std::max(max_tris, tris);
    std::uniform_real_distribution<double> o(-1.0, 1.0);
    for (int r = 0; r < 1000; ++r, ++rays) {
      const wm::Ray ray(Vec3{o(rng), o(rng), o(rng)}, r % 2 ? oracle::random_unit(rng)
                                                             : wm::normalized(Vec3{o(rng) * 0.6, o(rng) * 0.6, 1.0}));
      const auto t0 = clock::now();
      const auto fast = wm::raycast_scene(scene, ray);
      bvh_seconds += std::chrono::duration<double>(clock::now() - t0).count();

      std::optional<oracle::NodeHit> slow;
      double min_t = HUGE_VAL;
      std::vector<oracle::NodeHit> all;
      for (std::size_t i = 0; i < worlds.size(); ++i) {
        if (worlds[i].single_sided && wm::dot(ray.direction, worlds[i].front_normal) >= 0.0) continue;
        if (const auto h = oracle::linear_scan(worlds[i].mesh, ray)) {
          all.push_back({i, h->triangle, h->t});
          min_t = std::min(min_t, h->t);
        }
      }
      for (const auto& h : all) {
        if (h.t - min_t < wm::kTieEpsilon) {
          slow = h;
          break;
        }
      }
      const bool same = fast.has_value() == slow.has_value() &&
                        (!fast || (fast->node_index == slow->node && fast->hit.triangle_index == slow->triangle &&
                                   std::abs(fast->hit.t - slow->t) <= 1e-9));
      if (!same) ++mismatches;
      if (fast) ++hits;
    }
  }
  const double total = std::chrono::duration<double>(clock::now() - start).count();
  return {mismatches == 0 && total < 30.0,
          std::to_string(rays) + " rays, " + std::to_string(hits) + " hits, " + std::to_string(mismatches) +
              " mismatches, max " + std::to_string(max_tris) + " triangles/scene, bvh " + fmt("%.2f", bvh_seconds) +
              " s, total " + fmt("%.2f", total) + " s"};
}

// --- hull ----------------------------------------------------------------

Outcome hull_correctness() {
  std::mt19937_64 rng(2002);
  std::uniform_int_distribution<int> count(4, 500);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = -HUGE_VAL;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = count(rng);
    std::vector<Vec3> pts;
    for (int i = 0; i < n; ++i) {
      switch (trial % 4) {
        case 0: pts.push_back({u(rng), u(rng), u(rng)}); break;
        case 1: pts.push_back(oracle::random_unit(rng) * 2.0); break;
        case 2: pts.push_back({g(rng) * 3.0, g(rng), g(rng) * 0.2}); break;
        default: {
          // Lattice points: many coplanar and collinear subsets.
          std::uniform_int_distribution<int> k(-2, 2);
          pts.push_back({double(k(rng)), double(k(rng)), double(k(rng))});
        }
      }
    }
    if (trial % 4 == 3) {
      // Guarantee a volume.
      pts.push_back({-2, -2, -2});
      pts.push_back({2, -2, -2});
      pts.push_back({0, 2, -2});
      pts.push_back({0, 0, 2});
    }
    const wm::ConvexHull h = wm::convex_hull(pts);
    for (const Vec3& p : pts) worst = std::max(worst, oracle::max_plane_distance(h, p));
    const wm::ConvexHull again = wm::convex_hull(h.vertices);
    auto key = [](std::vector<Vec3> v) {
      std::sort(v.begin(), v.end(), [](const Vec3& a, const Vec3& b) { return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z); });
      return v;
    };
    if (key(again.vertices) != key(h.vertices) || !oracle::watertight(h)) ++failures;
  }
  std::vector<Vec3> cube;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) cube.push_back({double(x), double(y), double(z)});
  const wm::ConvexHull c = wm::convex_hull(cube);
  const bool cube_ok = c.vertices.size() == 8 && c.faces.size() == 12 && std::abs(c.volume() - 8.0) <= 1e-9;
  return {failures == 0 && worst <= 1e-6 && cube_ok,
          "100 sets, max outside distance " + fmt("%.3g", worst) + ", " + std::to_string(failures) +
              " idempotence/watertight failures, cube " + std::to_string(c.vertices.size()) + "v/" +
              std::to_string(c.faces.size()) + "f/volume " + fmt("%.17g", c.volume())};
}

// --- cursor --------------------------------------------------------------

Outcome within_object() {
  // Ellipsoid-ish curved mesh with smooth normals, filling most of the view.
  wm::SceneNode blob = fixture::sphere_node("blob", {0, 0, 3}, 1.0, 48, 96);
  blob.transform.scale = {1.3, 0.9, 1.0};
  wm::Scene scene = fixture::scene_of({blob});
  wm::Session s(scene, wm::EngineConfig{});
  std::mt19937_64 rng(3003);
  std::uniform_int_distribution<int> d(-40, 40);
  int on_surface = 0, violations = 0;
  std::string first;
  for (int i = 0; i < 10000; ++i) {
    long long dx = d(rng), dy = d(rng);
    const auto& c = s.cursor();
    if (c.yaw > 30) dx = -std::abs(dx);
    if (c.yaw < -30) dx = std::abs(dx);
    if (c.pitch > 22) dy = std::abs(dy);
    if (c.pitch < -22) dy = -std::abs(dy);
    s.step({i, wm::DeltaEvent{dx, dy}});
    if (s.cursor().surface()) {
      ++on_surface;
      const std::string v = oracle::cursor_violation(s.scene(), s.view(), s.frame(), s.config(), s.cursor(), 1e-6);
      if (!v.empty()) {
        if (first.empty()) first = "event " + std::to_string(i) + ": " + v;
        ++violations;
      }
    }
  }
  return {violations == 0 && on_surface > 5000,
          "10000 deltas, " + std::to_string(on_surface) + " on the surface, " + std::to_string(violations) +
              " violations" + (first.empty() ? "" : ", first " + first)};
}

Outcome between_objects() {
  const wm::Scene scene = wm::parse_scene(read_file("two_spheres.wmscene"));
  const wm::Trace trace = wm::parse_trace(read_file("gap_sweep.trace"));
  wm::Session s(scene, wm::effective_config(scene));
  std::vector<wm::TrajectorySample> samples;
  double worst_handoff = 0.0, worst_tangent = 0.0;
  int handoffs = 0;
  for (const auto& e : trace) {
    const std::string left = s.cursor().surface() ? s.cursor().surface()->node_id : "";
    samples.push_back(s.step(e));
    if (left.empty() || !s.cursor().in_void()) continue;
    ++handoffs;
    const double depth = s.cursor().in_void()->depth;
    const Vec3 dir = s.frame().direction(s.cursor().yaw, s.cursor().pitch);
    const auto gap = wm::angular_gap(s.scene(), s.cache(), left, dir);
    if (!gap) return {false, "node " + left + " missing from the silhouette cache"};
    worst_handoff = std::max(worst_handoff, std::abs(depth - gap->boundary_depth));
    // Analytic tangent length of the ideal sphere, for reference only.
    const Vec3 c = s.scene().find(left)->transform.translation;
    worst_tangent = std::max(worst_tangent, std::abs(depth - std::sqrt(wm::dot(c, c) - 0.4 * 0.4)));
  }
  const wm::Metrics m = wm::compute_metrics(samples);
  return {handoffs >= 2 && m.max_depth_jump < 0.1 && worst_handoff <= 1e-2,
          "max_depth_jump " + fmt("%.4g", m.max_depth_jump) + " m, " + std::to_string(handoffs) +
              " surface->void handoffs, worst |depth - boundary depth| " + fmt("%.3g", worst_handoff) +
              " m (vs analytic tangent length " + fmt("%.3g", worst_tangent) + " m)"};
}

Outcome symmetric_interpolation() {
  // Two nodes, at 1 m and 3 m, each seen 20 degrees to either side of the
  // query direction. Their caches hold exactly mirrored samples so the
  // angular gaps are equal by construction.
  const double a = wm::deg_to_rad(20.0);
  const Vec3 left_dir{-std::sin(a), 0, std::cos(a)}, right_dir{std::sin(a), 0, std::cos(a)};
  wm::Scene scene = fixture::scene_of({fixture::sphere_node("near", left_dir * 1.05, 0.05),
                                       fixture::sphere_node("far", right_dir * 3.15, 0.15)});
  wm::SilhouetteCache cache;
  const double spread = wm::deg_to_rad(2.0);
  for (int side = 0; side < 2; ++side) {
    wm::NodeSilhouette entry;
    entry.node_index = static_cast<std::size_t>(side);
    entry.node_id = side == 0 ? "near" : "far";
    const double sign = side == 0 ? -1.0 : 1.0;
    for (int k = 0; k < 8; ++k) {
      const double th = a - spread + spread * 0.25 * k;
      const double ph = spread * (k % 3 - 1);
      entry.samples.push_back({wm::normalized(Vec3{sign * std::sin(th), std::sin(ph), std::cos(th)}), side == 0 ? 1.0 : 3.0});
    }
    cache.nodes.push_back(entry);
  }
  const wm::EngineConfig config;
  const double depth = wm::void_depth(scene, cache, {0, 0, 1}, config);

  // The same layout through a sampled cache of real geometry, for reference.
  const wm::SilhouetteCache built = wm::build_silhouette_cache(scene, {}, config);
  const double sampled = wm::void_depth(scene, built, {0, 0, 1}, config);
  return {std::abs(depth - 2.0) <= 1e-6, "void depth " + fmt("%.17g", depth) + " m (sampled silhouettes of the spheres give " +
                                             fmt("%.6g", sampled) + " m)"};
}

Outcome panel_continuity() {
  const wm::Scene scene = wm::parse_scene(read_file("panel.wmscene"));
  const wm::Trace trace = wm::parse_trace(read_file("panel_exit.trace"));
  wm::Session s(scene, wm::effective_config(scene));
  double worst_exit = 0.0, worst_enter = 0.0;
  int exits = 0, entries = 0;
  for (const auto& e : trace) {
    const bool was_panel = s.cursor().panel() != nullptr;
    s.step(e);
    if (const auto& ex = s.last_panel_exit()) {
      ++exits;
      worst_exit = std::max(worst_exit, wm::distance(ex->exit_position, ex->edge_point));
    }
    if (!was_panel && s.cursor().panel()) {
      ++entries;
      // The entry point is where the 3D ray met the panel.
      const wm::Ray ray(s.view().origin, s.frame().direction(s.cursor().yaw, s.cursor().pitch));
      const auto hit = wm::raycast_scene(s.scene(), ray);
      worst_enter = std::max(worst_enter, hit ? wm::distance(hit->hit.point, s.cursor().position) : HUGE_VAL);
    }
  }

  // Pixel mapping: (0.5, 0.5) + 100 counts on a 1000 px, 1 m panel.
  const wm::SceneNode& node = *scene.find("browser");
  const wm::ViewPose view = scene.view;
  const wm::CursorFrame frame = wm::CursorFrame::from_view(view);
  const wm::EngineConfig config;
  const wm::SilhouetteCache cache;
  wm::CursorState st;
  st.contact = wm::PanelContact{"browser", 0.5, 0.5};
  const wm::CursorStep step = wm::panel_step({scene, view, frame, cache, config, {}}, st, 100, 0);
  const bool exact = step.state.panel() && step.state.panel()->u == 0.7 && step.state.panel()->v == 0.5 &&
                     step.state.position == wm::panel_point(node, 0.7, 0.5);
  return {exits >= 1 && entries >= 1 && worst_exit <= 1e-6 && worst_enter <= 1e-6 && exact,
          std::to_string(exits) + " exit(s), max exit jump " + fmt("%.3g", worst_exit) + " m, " + std::to_string(entries) +
              " entry(ies), max entry jump " + fmt("%.3g", worst_enter) + " m, u after 100 counts " +
              (step.state.panel() ? fmt("%.17g", step.state.panel()->u) : std::string("n/a"))};
}

// --- harness -------------------------------------------------------------

struct Golden {
  const char* scene;
  const char* trace;
};
constexpr Golden kGoldens[] = {{"plane", "plane"},         {"plane", "plane_single"}, {"two_spheres", "gap_sweep"},
                               {"panel", "panel_exit"},     {"desk", "desk_session"}};

Outcome determinism() {
  int pairs = 0, unstable = 0, drift = 0;
  std::string detail;
  for (const auto& g : kGoldens) {
    const wm::Scene scene = wm::parse_scene(read_file(std::string(g.scene) + ".wmscene"));
    const wm::Trace trace = wm::parse_trace(read_file(std::string(g.trace) + ".trace"));
    const std::string golden = read_file(std::string(g.trace) + ".log");
    std::string first;
    for (int k = 0; k < 3; ++k) {
      const std::string log = wm::format_log(wm::replay(scene, trace, wm::effective_config(scene)));
      if (k == 0) first = log;
      if (log != first) ++unstable;
    }
    const Run cli = run("replay --scene '" + g_data + "/" + g.scene + ".wmscene' --trace '" + g_data + "/" + g.trace +
                        ".trace' --out -");
    if (first != golden || cli.status != 0 || cli.output != golden) {
      ++drift;
      detail += std::string(" ") + g.trace;
    }
    ++pairs;
  }
  return {unstable == 0 && drift == 0, std::to_string(pairs) + " golden pairs x 3 replays + CLI, " + std::to_string(unstable) +
                                           " unstable, " + std::to_string(drift) + " differ from golden" + detail};
}

Outcome interaction_suite() {
  std::vector<std::string> failed;
  const wm::EngineConfig config;
  const wm::ViewPose view;
  const wm::CursorFrame frame = wm::CursorFrame::from_view(view);

  // Drag depth invariance through the session.
  wm::Scene scene = fixture::scene_of({fixture::box_node("cube", {0.1, 0, 2}, {0.15, 0.15, 0.15}),
                                       fixture::box_node("table", {0, -1, 3}, {1.5, 0.1, 1.5}, wm::OriginKind::Real, "table"),
                                       fixture::wall_node("wall", 6)});
  double drift = 0.0;
  {
    wm::Session s(scene, config);
    s.step({0, wm::DeltaEvent{20, 0}});
    s.step({1, wm::ButtonEvent{wm::MouseButton::Left, true}});
    if (!s.drag().active) return {false, "drag did not start"};
    const double depth0 = s.drag().grab_depth;
    std::mt19937_64 rng(5005);
    std::uniform_int_distribution<int> d(-30, 30);
    for (int i = 0; i < 1000; ++i) {
      s.step({2 + i, wm::DeltaEvent{d(rng), d(rng)}});
      const Vec3 grab = s.scene().find("cube")->transform.translation - s.drag().grab_offset;
      drift = std::max(drift, std::abs(wm::distance(grab, s.view().origin) - depth0));
    }
  }
  if (drift > 1e-9) failed.push_back("drag drift");

  // Scroll depth.
  wm::DragState drag{"cube", 2.0, {}, true};
  wm::drag_update(scene, drag, view, {0, 0, 1}, 3, config);
  const double scrolled = drag.grab_depth;
  if (std::abs(scrolled - 2.31525) > 1e-12 || scrolled != 2.0 * std::pow(1.05, 3.0)) failed.push_back("scroll");

  // Gizmo parallelism through the session's middle-button handle.
  double off_axis = 0.0, travel = 0.0;
  {
    wm::Session s(scene, config);
    s.step({0, wm::DeltaEvent{20, 0}});
    s.step({1, wm::ButtonEvent{wm::MouseButton::Left, true}});
    s.step({2, wm::ButtonEvent{wm::MouseButton::Left, false}});
    for (int axis = 0; axis < 3; ++axis) {
      s.step({3, wm::ButtonEvent{wm::MouseButton::Middle, true}});
      if (!s.gizmo()) return {false, "gizmo did not engage"};
      const wm::GizmoAxis g = *s.gizmo();
      for (int k = 0; k < 40; ++k) {
        s.step({4, wm::DeltaEvent{k % 2 ? 9 : -4, k % 3 ? 6 : -11}});
        const Vec3 p = s.scene().find("cube")->transform.translation;
        off_axis = std::max(off_axis, wm::length(wm::cross(p - g.origin, g.direction)));
        travel = std::max(travel, wm::distance(p, g.origin));
      }
    }
  }
  if (off_axis > 1e-9 || travel == 0.0) failed.push_back("gizmo");

  // Radial menu N=4.
  const std::vector<wm::MenuItem> four(4, {"x", "x"});
  auto pick = [&](double ax, double ay) {
    wm::RadialMenu m = *wm::open_menu(four, "");
    return wm::menu_navigate(m, ax, ay);
  };
  const bool menu_ok = pick(10, 0) == std::optional<std::size_t>(1) && pick(0, -10) == std::optional<std::size_t>(0) &&
                       pick(3, 0) == std::nullopt;
  if (!menu_ok) failed.push_back("menu");

  // Real nodes reject drag.
  bool real_ok = false;
  {
    const auto [yaw, pitch] = frame.angles(wm::normalized(Vec3{0, -0.9, 3}));
    const wm::SilhouetteCache cache;
    const wm::CursorState on_table = wm::resolve_cursor({scene, view, frame, cache, config, {}}, yaw, pitch);
    real_ok = on_table.surface() && on_table.surface()->node_id == "table" &&
              wm::begin_drag(on_table, scene, view).status == wm::DragStart::Immovable;
  }
  if (!real_ok) failed.push_back("real drag");

  std::string names;
  for (const auto& f : failed) names += " " + f;
  return {failed.empty(), "drag drift " + fmt("%.3g", drift) + " m, scroll " + fmt("%.17g", scrolled) + " m (|d - 2.31525| = " +
                              fmt("%.2g", std::abs(scrolled - 2.31525)) + "), gizmo off-axis " + fmt("%.3g", off_axis) + " over " + fmt("%.3g", travel) + " m travel" +
                              ", menu " + (menu_ok ? "ok" : "wrong") + ", real drag " + (real_ok ? "rejected" : "accepted") +
                              (names.empty() ? "" : ", failed:" + names)};
}

Outcome cli_contract() {
  const Run dup = run("validate --scene '" + g_data + "/duplicate_id.wmscene'");
  const Run bad = run("validate --trace '" + g_data + "/malformed.trace'");
  const Run order = run("validate --trace '" + g_data + "/non_monotone.trace'");
  const Run good = run("validate --scene '" + g_data + "/desk.wmscene' --trace '" + g_data + "/desk_session.trace'");
  const Run missing = run("replay --scene '" + g_data + "/nope.wmscene' --trace '" + g_data + "/plane.trace' --out -");
  const bool ok = dup.status == 2 && dup.output.find("nodes[1].id: duplicate node id \"a\"") != std::string::npos &&
                  bad.status == 2 && bad.output.find("line 2:") != std::string::npos && order.status == 2 &&
                  order.output.find("line 2: timestamp 5 is earlier than the previous 10") != std::string::npos &&
                  good.status == 0 && missing.status == 1;
  auto line = [](const std::string& s) { return s.substr(0, s.find('\n')); };
  return {ok, "duplicate id -> " + std::to_string(dup.status) + " \"" + line(dup.output) + "\"; malformed trace -> " +
                  std::to_string(bad.status) + " \"" + line(bad.output) + "\"; valid -> " + std::to_string(good.status) +
                  "; missing file -> " + std::to_string(missing.status)};
}

Outcome protocol_conformance() {
  const wm::Scene scene = wm::parse_scene(read_file("desk.wmscene"));
  const wm::EngineConfig config = wm::effective_config(scene);
  std::promise<unsigned short> bound;
  wm::ServeOptions opts;
  opts.once = true;
  opts.on_listening = [&](unsigned short port) { bound.set_value(port); };
  std::thread server([&] { wm::serve(scene, config, opts); });
  int states = 0, diffs = 0;
  bool hello = false, err = false;
  {
    client::LineClient c(bound.get_future().get());
    hello = c.request("HELLO").rfind("SCENE {", 0) == 0;
    err = c.request("EVT not an event").rfind("ERR ", 0) == 0;
    std::istringstream events(read_file("desk_session.trace"));
    std::istringstream log(read_file("desk_session.log"));
    std::string ev, expected;
    while (std::getline(events, ev)) {
      if (ev.empty() || ev[0] == '#') continue;
      std::getline(log, expected);
      if (c.request("EVT " + ev) != "STATE " + expected) ++diffs;
      ++states;
    }
    c.send("BYE");
    c.close();
  }
  server.join();
  return {hello && err && diffs == 0 && states > 0,
          "TCP session: HELLO " + std::string(hello ? "ok" : "bad") + ", ERR " + (err ? "ok" : "bad") + ", " +
              std::to_string(states) + " STATE lines, " + std::to_string(diffs) + " differ from the replay log"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: wm_acceptance <test data dir> <path to wm>\n";
    return 2;
  }
  g_data = argv[1];
  g_wm = argv[2];
  report("primary", "raycast: BVH equals linear scan, 10 scenes x 1000 rays, < 30 s", raycast_equivalence);
  report("primary", "hull: containment, idempotence, cube", hull_correctness);
  report("primary", "within-object tracking: surface point and interpolated normal", within_object);
  report("primary", "between-object continuity: gap sweep", between_objects);
  report("primary", "symmetric interpolation: 1 m and 3 m give 2.0 m", symmetric_interpolation);
  report("primary", "panel transition continuity and exact pixel mapping", panel_continuity);
  report("primary", "determinism: repeated replays and golden logs", determinism);
  report("primary", "interaction suite: drag, scroll, gizmo, menu, real nodes", interaction_suite);
  report("primary", "CLI contract: validate exit codes and messages", cli_contract);
  report("secondary", "session protocol: served STATE stream equals the replay log", protocol_conformance);
  std::cout << "NOT RUN  [secondary] viewer live-steer smoke test  (needs a browser and a person at the mouse)" << std::endl;
  std::cout << (g_failures == 0 ? "all primary criteria pass" : std::to_string(g_failures) + " primary criteria fail")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
