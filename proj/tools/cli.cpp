#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "polychrome/combinations.hpp"
#include "polychrome/error.hpp"
#include "polychrome/json_io.hpp"
#include "polychrome/random.hpp"
#include "svg.hpp"

namespace polychrome::tools {

namespace {

struct Outcome {
  int code = kVerified;
  std::string verdict;
  Json payload = Json::object();
  Json stats = Json::object();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) { return parse_json(read_file(path)); }

unsigned thread_count(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
      throw PreconditionError("THREADS must be a positive integer");
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ProceduralColoring coloring_arg(const std::string& text) {
  if (text == "two-line-extended") return ProceduralColoring(TwoLine{true});
  if (text == "two-line") return ProceduralColoring(TwoLine{false});
  auto with_n = [&text](const std::string& prefix) -> std::optional<std::size_t> {
    if (text.rfind(prefix, 0) != 0) return std::nullopt;
    try {
      return static_cast<std::size_t>(std::stoul(text.substr(prefix.size())));
    } catch (const std::logic_error&) {
      throw ParseError("bad coloring shorthand '" + text + "'");
    }
  };
  if (auto n = with_n("flag-euclidean:")) return ProceduralColoring(FlagEuclidean{*n});
  if (auto n = with_n("flag:")) return ProceduralColoring(FlagInversive{*n});
  if (!text.empty() && text.front() == '{') return coloring_from_json(parse_json(text));
  return coloring_from_json(read_json(text));
}

std::vector<Point> image_points(const std::string& path) {
  Json j = read_json(path);
  const Json& arr = j.is_object() ? j.at("points") : j;
  if (!arr.is_array()) throw ParseError("image file must hold an array of points");
  std::vector<Point> pts;
  for (const auto& p : arr) pts.push_back(point_from_json(p));
  return pts;
}

// Witness object inside either a bare witness document or a report.
Json witness_document(const Json& j) {
  if (j.is_object() && j.contains("payload")) {
    const Json& p = j["payload"];
    if (p.contains("witness")) return p["witness"];
    throw ParseError("report carries no witness");
  }
  return j;
}

Outcome max_report(const ColoredConfig& cfg, const PolychromaticWitness& w, std::size_t bound, std::uint64_t spheres) {
  Outcome o;
  const bool violated = w.colors.size() > bound;
  o.code = violated ? kFound : kVerified;
  o.verdict = violated ? "violation" : "verified";
  o.payload = {{"bound", bound}, {"max_colors", w.colors.size()}, {"sample_size", cfg.entries.size()},
               {"witness", to_json(w)}};
  o.stats = {{"spheres_examined", spheres}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polychromatic sphere search and verification", "polychrome"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::size_t samples = 30, n = 2, k = 0, dim = 0, circles = 1000, points_per_circle = 6, trials = 100;
  int target = 0;
  std::uint64_t budget = 10000;
  std::string kind, input, coloring, out_path, map_path, image_path, witness_path;

  auto* verify = app.add_subcommand("verify-construction", "Check a construction's sharpness bound on a sample");
  verify->add_option("--kind", kind, "flag | generic | two-line | flag-euclidean")
      ->required()
      ->check(CLI::IsMember({"flag", "generic", "two-line", "flag-euclidean"}));
  verify->add_option("--n", n, "Dimension")->check(CLI::Range(1, 6));
  verify->add_option("--samples", samples, "Points per color class");
  verify->add_option("--seed", seed);
  verify->add_option("--k", k, "Colors of the generic construction (default n+3)");
  verify->add_option("--threads", threads);

  auto* search = app.add_subcommand("search", "Most colorful sphere of a colored configuration");
  search->add_option("--input", input, "Configuration JSON")->required();
  search->add_option("--dim", dim, "Sphere dimension (default n-1)");
  search->add_option("--target", target)->required();
  search->add_option("--threads", threads);

  auto* procedural = app.add_subcommand("search-procedural", "Budgeted witness search on a procedural coloring");
  procedural->add_option("--coloring", coloring, "Descriptor file, inline JSON or shorthand")->required();
  procedural->add_option("--target", target)->required();
  procedural->add_option("--budget", budget);
  procedural->add_option("--seed", seed);

  auto* separate = app.add_subcommand("separate", "Separating sphere for n+3 distinctly colored points");
  separate->add_option("--input", input, "Configuration JSON")->required();

  auto* euclid = app.add_subcommand("euclid", "Great spheres on the unit sphere");
  euclid->require_subcommand(1);
  auto* intersect = euclid->add_subcommand("intersect", "Intersect a great hyperplane sphere with a great circle");
  intersect->add_option("--input", input, "JSON {\"s\": flat, \"c\": flat}");
  intersect->add_option("--trials", trials, "Random pairs when no input is given");
  intersect->add_option("--n", n);
  intersect->add_option("--seed", seed);
  auto* everify = euclid->add_subcommand("verify", "Great-sphere color bound");
  everify->add_option("--input", input, "Configuration on the unit sphere");
  everify->add_option("--target", target);
  everify->add_option("--n", n);
  everify->add_option("--samples", samples);
  everify->add_option("--seed", seed);

  auto* wcp = app.add_subcommand("wcp", "Weakly circle-preserving maps");
  wcp->require_subcommand(1);
  auto* wcheck = wcp->add_subcommand("check", "Check a map on sampled circles");
  wcheck->add_option("--map", map_path)->required();
  auto* wrefute = wcp->add_subcommand("refute", "Five-point refutation");
  wrefute->add_option("--map", map_path)->required();
  wrefute->add_option("--budget", budget);
  auto* wsharp = wcp->add_subcommand("sharp", "Sharp four-point map");
  wsharp->add_option("--image", image_path, "Four image points (default 0, 1, inf, i)");
  auto* wcgp = wcp->add_subcommand("cgp", "Circular general position");
  wcgp->add_option("--image", image_path)->required();
  for (auto* sub : {wcheck, wsharp}) {
    sub->add_option("--circles", circles);
    sub->add_option("--points", points_per_circle);
  }
  for (auto* sub : {wcheck, wrefute, wsharp}) sub->add_option("--seed", seed);

  auto* plot = app.add_subcommand("plot", "SVG figure of a planar configuration");
  plot->add_option("--input", input)->required();
  plot->add_option("--out", out_path)->required();
  plot->add_option("--witness", witness_path, "Witness or report to highlight");

  auto* validate = app.add_subcommand("validate", "Revalidate a witness or report");
  validate->add_option("--input", input)->required();
  validate->add_option("--coloring", coloring, "Check colors against this coloring");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kVerified : kInputError;
  }

  Json parameters = Json::object();
  std::string command;
  Outcome o;
  try {
    if (verify->parsed()) {
      command = "verify-construction";
      const unsigned t = thread_count(threads);
      parameters = {{"kind", kind}, {"n", n}, {"samples", samples}, {"seed", seed}};
      if (kind == "flag") {
        const ProceduralColoring c(FlagInversive{n});
        const ColoredConfig cfg = sample_config(c, samples, seed);
        SearchStats st;
        const auto w = max_polychromatic(cfg, n - 1, t, &st);
        o = max_report(cfg, w, n + 1, st.spheres_examined);
      } else if (kind == "generic") {
        if (k == 0) k = n + 3;
        parameters["k"] = k;
        const ProceduralColoring c(GenericPoints{n, k, generic_position_points(n, k - 1, seed)});
        const ColoredConfig cfg = sample_config(c, samples, seed);
        SearchStats st;
        const auto w = max_polychromatic(cfg, n - 1, t, &st);
        o = max_report(cfg, w, n + 2, st.spheres_examined);
      } else if (kind == "two-line") {
        if (n != 2) throw PreconditionError("the two-line construction is planar (n = 2)");
        const ColoredConfig cfg = sample_config(ProceduralColoring(TwoLine{false}), samples, seed);
        const TwoLineReport rep = two_line_sharpness(cfg.entries, t);
        o.code = rep.violation_count > 0 ? kFound : kVerified;
        o.verdict = rep.violation_count > 0 ? "violation" : "verified";
        o.payload = {{"bound", 3}, {"sample_size", cfg.entries.size()}, {"report", to_json(rep)}};
        o.stats = {{"spheres_examined", rep.circles}};
      } else {
        const ProceduralColoring c(FlagEuclidean{n});
        const ColoredConfig cfg = sample_config(c, samples, seed);
        SearchStats st;
        const auto w = max_colors_great(cfg, &st);
        o = max_report(cfg, w, n, st.spheres_examined);
      }
    } else if (search->parsed()) {
      command = "search";
      const ColoredConfig cfg = config_from_json(read_json(input));
      if (dim == 0) dim = cfg.n - 1;
      parameters = {{"input", input}, {"dim", dim}, {"target", target}};
      SearchStats st;
      const auto w = max_polychromatic(cfg, dim, thread_count(threads), &st);
      const bool hit = static_cast<int>(w.colors.size()) >= target;
      o.code = hit ? kFound : kVerified;
      o.verdict = hit ? "witness" : "absent";
      o.payload = {{"max_colors", w.colors.size()}, {"sample_size", cfg.entries.size()}};
      if (hit) o.payload["witness"] = to_json(w);
      o.stats = to_json(st);
    } else if (procedural->parsed()) {
      command = "search-procedural";
      const ProceduralColoring c = coloring_arg(coloring);
      parameters = {{"coloring", to_json(c)}, {"target", target}, {"budget", budget}, {"seed", seed}};
      const SearchResult r = find_polychromatic(c, target, budget, seed);
      o.code = r.witness ? kFound : kVerified;
      o.verdict = r.witness ? "witness" : "not-found";
      if (r.witness) o.payload["witness"] = to_json(*r.witness);
      o.stats = to_json(r.stats);
    } else if (separate->parsed()) {
      command = "separate";
      const ColoredConfig cfg = config_from_json(read_json(input));
      parameters = {{"input", input}};
      std::optional<SeparationWitness> w;
      if (cfg.n == 2 && cfg.entries.size() == 5) {
        w = separating_circle_5pts(cfg.entries);
        o.payload["method"] = "five-point";
        o.payload["bruteforce_found"] = separating_sphere_bruteforce(cfg.entries).has_value();
      } else {
        w = separating_sphere_bruteforce(cfg.entries);
        o.payload["method"] = "bruteforce";
      }
      o.code = w ? kFound : kVerified;
      o.verdict = w ? "witness" : "not-found";
      if (w) o.payload["witness"] = to_json(*w);
    } else if (intersect->parsed()) {
      command = "euclid intersect";
      if (!input.empty()) {
        parameters = {{"input", input}};
        const Json j = read_json(input);
        const auto g = great_intersection(great_flat_from_json(j.at("s")), great_flat_from_json(j.at("c")));
        o.verdict = "intersects";
        o.payload["intersection"] = to_json(g);
      } else {
        parameters = {{"trials", trials}, {"n", n}, {"seed", seed}};
        Rng rng(seed);
        auto random_flat = [&](std::size_t d) {
          for (;;) {
            Matrix basis(d, Vector(n + 1));
            for (auto& v : basis)
              for (auto& x : v) x = rng.rational(9, 4);
            if (rank(basis) == d) return GreatFlat(std::move(basis));
          }
        };
        std::uint64_t found = 0, exact = 0;
        for (std::size_t i = 0; i < trials; ++i) {
          const GreatFlat s = random_flat(n);
          const GreatFlat c = random_flat(2);
          const auto g = great_intersection(s, c);
          if (!is_zero_vector(g.direction) && s.contains(g.direction) && c.contains(g.direction)) ++found;
          if (g.exact) ++exact;
        }
        o.code = found == trials ? kVerified : kFound;
        o.verdict = found == trials ? "verified" : "violation";
        o.payload = {{"trials", trials}, {"intersections", found}, {"exact_points", exact}};
      }
    } else if (everify->parsed()) {
      command = "euclid verify";
      if (!input.empty()) {
        const ColoredConfig cfg = config_from_json(read_json(input));
        if (target == 0) target = static_cast<int>(cfg.n) + 1;
        parameters = {{"input", input}, {"target", target}};
        SearchStats st;
        const auto w = max_colors_great(cfg, &st);
        const bool hit = static_cast<int>(w.colors.size()) >= target;
        o.code = hit ? kFound : kVerified;
        o.verdict = hit ? "witness" : "absent";
        o.payload = {{"max_colors", w.colors.size()}, {"sample_size", cfg.entries.size()}, {"witness", to_json(w)}};
        o.stats = to_json(st);
      } else {
        parameters = {{"n", n}, {"samples", samples}, {"seed", seed}};
        const ColoredConfig cfg = sample_config(ProceduralColoring(FlagEuclidean{n}), samples, seed);
        SearchStats st;
        const auto w = max_colors_great(cfg, &st);
        o = max_report(cfg, w, n, st.spheres_examined);
      }
    } else if (wcheck->parsed() || wsharp->parsed()) {
      const bool sharp = wsharp->parsed();
      command = sharp ? "wcp sharp" : "wcp check";
      std::optional<FiniteImageMap> map;
      if (sharp) {
        std::vector<Point> m = image_path.empty()
                                   ? std::vector<Point>{Point{Scalar(0), Scalar(0)}, Point{Scalar(1), Scalar(0)},
                                                        Point::infinity(2), Point{Scalar(0), Scalar(1)}}
                                   : image_points(image_path);
        map = build_sharp_map(m);
        parameters = {{"image", to_json(*map)["image"]}};
      } else {
        map = image_map_from_json(read_json(map_path));
        parameters = {{"map", map_path}};
      }
      parameters["circles"] = circles;
      parameters["points"] = points_per_circle;
      parameters["seed"] = seed;
      const auto sample = sample_circles(circles, points_per_circle, seed);
      const WcpResult r = wcp_check(*map, sample);
      o.code = r.pass ? kVerified : kFound;
      o.verdict = r.pass ? "pass-on-sample" : "violation";
      if (sharp) o.payload["map"] = to_json(*map);
      if (r.violation) o.payload["violation"] = to_json(*r.violation);
      o.stats = {{"circles_checked", r.circles_checked}};
    } else if (wrefute->parsed()) {
      command = "wcp refute";
      const FiniteImageMap map = image_map_from_json(read_json(map_path));
      parameters = {{"map", map_path}, {"budget", budget}, {"seed", seed}};
      try {
        const FivePointRefutation r = five_point_refute(map, budget, seed);
        o.code = kFound;
        o.verdict = "violation";
        o.payload["witness"] = to_json(r);
        o.stats = to_json(r.stats);
      } catch (const PreconditionError&) {
        throw;
      } catch (const Error& e) {
        o.verdict = "budget-exhausted";
        o.payload["message"] = e.what();
      }
    } else if (wcgp->parsed()) {
      command = "wcp cgp";
      const auto m = image_points(image_path);
      parameters = {{"image", image_path}};
      const CgpReport r = circular_general_position(m);
      o.code = r.verdict ? kVerified : kFound;
      o.verdict = r.verdict ? "general-position" : "violation";
      o.payload = to_json(r);
    } else if (plot->parsed()) {
      command = "plot";
      const ColoredConfig cfg = config_from_json(read_json(input));
      std::vector<Highlight> highlights;
      if (!witness_path.empty()) {
        const Json w = witness_document(read_json(witness_path));
        if (w.contains("separated")) {
          const SeparationWitness s = separation_from_json(w);
          highlights.push_back({s.sphere, s.defining});
        } else {
          const PolychromaticWitness p = witness_from_json(w);
          highlights.push_back({p.sphere, p.points});
        }
      }
      const std::string svg = render_svg(cfg, highlights);
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw ParseError("cannot write '" + out_path + "'");
      f << svg;
      parameters = {{"input", input}, {"out", out_path}};
      o.verdict = "written";
      o.payload = {{"path", out_path}, {"bytes", svg.size()}};
    } else if (validate->parsed()) {
      command = "validate";
      parameters = {{"input", input}};
      const Json w = witness_document(read_json(input));
      bool ok = false;
      if (w.contains("separated")) {
        ok = separation_valid(separation_from_json(w));
        o.payload["kind"] = "separation";
      } else {
        std::optional<ProceduralColoring> c;
        if (!coloring.empty()) {
          c = coloring_arg(coloring);
          parameters["coloring"] = to_json(*c);
        }
        ok = witness_valid(witness_from_json(w), c ? &*c : nullptr);
        o.payload["kind"] = "polychromatic";
      }
      o.code = ok ? kVerified : kFound;
      o.verdict = ok ? "valid" : "invalid";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Json report{{"command", command},
              {"parameters", parameters},
              {"verdict", o.verdict},
              {"exit_code", o.code},
              {"payload", o.payload},
              {"stats", o.stats}};
  out << dump_json(report);
  return o.code;
}

}  // namespace polychrome::tools
