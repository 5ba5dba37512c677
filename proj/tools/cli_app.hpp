#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skewbraid/skewbraid.hpp"

namespace skewbraid::cli {

struct CommonOptions {
  std::string params_file;
  std::string preset_name;
  std::string scale = "1";
  double alpha = 1.5;
  int steps = 1024;
  double tol = 1e-10;
  int grid = 256;
  double margin = 1.25;
  int max_iter = 200;
  std::string out_file;
};

struct Inputs {
  SkewParam lambda;
  double scale = 1.0;
  std::string source;
};

inline void add_common(CLI::App* app, CommonOptions& o, bool needs_lambda) {
  if (needs_lambda) {
    auto* params = app->add_option("--params", o.params_file, "parameter JSON file");
    auto* preset = app->add_option("--preset", o.preset_name, "named preset");
    params->excludes(preset);
    app->add_option("--scale", o.scale, "scale factor F or 'auto'");
  }
  app->add_option("--alpha", o.alpha, "escape exponent in (1, d)");
  app->add_option("--steps", o.steps, "base continuation steps")->check(CLI::PositiveNumber);
  app->add_option("--tol", o.tol, "Newton tolerance")->check(CLI::PositiveNumber);
  app->add_option("--grid", o.grid, "z-samples on the unit circle")->check(CLI::PositiveNumber);
  app->add_option("--margin", o.margin, "critical-value margin");
  app->add_option("--max-iter", o.max_iter, "escape iterations")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out_file, "write JSON here instead of standard output");
}

inline TrackConfig track_config(const CommonOptions& o) {
  TrackConfig c;
  c.steps = o.steps;
  c.tol = o.tol;
  c.escape.alpha = o.alpha;
  c.escape.z_samples = o.grid;
  c.escape.margin = o.margin;
  c.escape.max_iter = o.max_iter;
  return c;
}

inline json config_json(const CommonOptions& o, const Inputs* in) {
  json c{{"alpha", num(o.alpha)}, {"steps", o.steps},     {"tol", num(o.tol)},
         {"grid", o.grid},        {"margin", num(o.margin)}, {"max_iter", o.max_iter}};
  if (in) {
    c["source"] = in->source;
    c["scale_flag"] = o.scale;
    c["scale"] = num(in->scale);
  }
  return c;
}

inline Inputs load_inputs(const CommonOptions& o) {
  if (o.params_file.empty() == o.preset_name.empty())
    throw Error(ErrorKind::BadInput, "exactly one of --params or --preset is required");
  Inputs in;
  SkewParam base;
  if (!o.preset_name.empty()) {
    base = preset(o.preset_name);
    in.source = "preset:" + o.preset_name;
  } else {
    base = load_params(o.params_file);
    in.source = "file:" + o.params_file;
  }
  if (o.scale == "auto") {
    EscapeConfig cfg = track_config(o).escape;
    ScaledParam sp = auto_scale([&](double t) { return base.scaled(t); }, cfg);
    in.lambda = sp.lambda;
    in.scale = sp.scale;
  } else {
    double t = 0.0;
    try {
      std::size_t used = 0;
      t = std::stod(o.scale, &used);
      if (used != o.scale.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadInput, "--scale must be a number or 'auto', got '" + o.scale + "'");
    }
    if (!(t > 0.0)) throw Error(ErrorKind::BadInput, "--scale must be positive");
    in.lambda = base.scaled(t);
    in.scale = t;
  }
  return in;
}

inline void emit(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::BadInput, "cannot write '" + path + "'");
  f << text;
}

inline json admissibility_json(const AdmissibilityReport& r) {
  return json{{"admissible", r.admissible},
              {"in_E", r.in_E},
              {"degenerate", r.degenerate},
              {"doubling_ok", r.doubling_ok},
              {"escape_norm", num(r.escape_norm)},
              {"min_critical_value", num(r.min_critical_value)},
              {"required", num(r.required)},
              {"slack", num(r.slack)},
              {"binding_z", complex_json(r.binding_z)},
              {"binding_c", complex_json(r.binding_c)},
              {"reason", r.reason}};
}

inline json invariants_json(const BraidInvariants& inv) {
  return json{{"strands", inv.strands},
              {"cycle_type", inv.cycle_type},
              {"exponent_sum", inv.exponent_sum},
              {"component_count", inv.component_count},
              {"windings", inv.windings},
              {"linking_matrix", inv.linking_matrix}};
}

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline json analyze(const CommonOptions& o) {
  const Inputs in = load_inputs(o);
  const TrackConfig cfg = track_config(o);
  const SkewParam& l = in.lambda;
  const int d = l.degree();

  json r;
  r["schema"] = kSchema;
  r["command"] = "analyze";
  r["config"] = config_json(o, &in);
  r["lambda"] = to_json(l);
  r["escape_norm"] = num(escape_norm(l));
  r["alpha"] = num(o.alpha);
  r["escape_radius"] = num(escape_threshold(l, o.alpha));

  if (l.is_zero()) {
    r["e_membership"] = nullptr;
  } else {
    try {
      const EMembership e = e_membership(l);
      r["e_membership"] = {{"in_E", e.in_E},
                           {"circle_roots", complex_list(e.circle_roots)},
                           {"discriminant_degree", e.discriminant.degree()}};
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::Degenerate) throw;
      r["e_membership"] = {{"degenerate", true}};
    }
  }

  const ShiftLocusResult sl = shift_locus_test(l, cfg.escape);
  r["shift_locus"] = {{"verdict", to_string(sl.verdict)},
                      {"samples", sl.samples},
                      {"non_certified_orbits", sl.witnesses.size()}};

  const AdmissibilityReport adm = admissibility_certificate(l, cfg.escape);
  r["admissibility"] = admissibility_json(adm);
  if (!adm.admissible) return r;

  TrackConfig inner = cfg;
  inner.require_admissible = false;
  const BraidGeometry g = track_circle(l, 1, 1, inner);
  const BraidInvariants inv = invariants(g);
  const ExtractedBraid eb = extract_word(g);
  const WordInvariants wi = word_invariants(eb.word);
  r["S_q"] = perm_json(g.permutation);
  json braid = invariants_json(inv);
  braid["word"] = format_word(eb.word);
  braid["crossings"] = eb.crossings.size();
  braid["word_exponent_sum"] = wi.exponent_sum;
  braid["projection_angle"] = num(eb.angle);
  r["braid"] = braid;

  json comps = json::array();
  std::vector<int> predicted;
  for (const auto& c : fixed_point_components(g.permutation)) {
    comps.push_back({{"points", c.points}, {"winding", c.winding}});
    predicted.push_back(c.winding);
  }
  r["julia"] = {{"m_S", perm_order(g.permutation)}, {"fixed_point_components", comps}};

  json agree;
  agree["geometry_vs_combinatorics"] = sorted(inv.windings) == sorted(predicted);
  agree["crossings_vs_linking"] = wi.exponent_sum == inv.exponent_sum;
  agree["word_vs_geometry_fingerprint"] = fingerprint_equal(inv, wi.fingerprint);
  agree["word_permutation"] =
      wi.perm == eb.position_of_label * g.permutation * eb.position_of_label.inverse();
  if (d * d <= 32) {
    const LevelCheck lc = level_monodromy_check(l, 2, 1, inner);
    agree["recurrence_level2"] = lc.match;
  } else {
    agree["recurrence_level2"] = nullptr;
  }
  r["agreement"] = agree;
  return r;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Braids, monodromy and Julia combinatorics of polynomial skew-products"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonOptions o;
  int level = 1, turns = 1;
  std::string svg_file, csv_file;
  std::string qa = "0", qb = "0", qc = "0";
  int fd = 0, ffixed = 0;
  std::vector<int> fcycles;
  std::vector<double> fradii;
  std::string sperm, scode;
  int sd = 0;
  long long spower = 1;

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "full report as JSON");
  add_common(analyze_cmd, o, true);

  CLI::App* braid_cmd = app.add_subcommand("braid", "braid word, SVG diagram and CSV strands");
  add_common(braid_cmd, o, true);
  braid_cmd->add_option("--level", level)->check(CLI::PositiveNumber);
  braid_cmd->add_option("--turns", turns);
  braid_cmd->add_option("--svg", svg_file, "write the diagram here");
  braid_cmd->add_option("--csv", csv_file, "write strand samples here");

  CLI::App* img_cmd = app.add_subcommand("img-verify", "tree monodromy versus the recurrence formula");
  add_common(img_cmd, o, true);
  img_cmd->add_option("--level", level)->check(CLI::PositiveNumber);
  img_cmd->add_option("--turns", turns);

  CLI::App* scan_cmd = app.add_subcommand("scan-e", "roots of the discriminant in z");
  add_common(scan_cmd, o, true);

  CLI::App* quad_cmd = app.add_subcommand("quad", "s(lambda) for the quadratic family");
  quad_cmd->add_option("--a", qa, "complex as re or re,im");
  quad_cmd->add_option("--b", qb);
  quad_cmd->add_option("--c", qc);
  quad_cmd->add_option("--out", o.out_file);

  CLI::App* factory_cmd = app.add_subcommand("factory", "parameter with a prescribed cycle type");
  add_common(factory_cmd, o, false);
  factory_cmd->add_option("--d", fd)->required();
  factory_cmd->add_option("--fixed", ffixed);
  factory_cmd->add_option("--cycles", fcycles)->delimiter(',');
  factory_cmd->add_option("--radii", fradii)->delimiter(',');
  factory_cmd->add_option("--scale", o.scale, "scale factor F or 'auto'");

  CLI::App* susp_cmd = app.add_subcommand("suspension", "h-orbit and winding of a code");
  susp_cmd->add_option("--perm", sperm, "cycle notation, e.g. \"(2 3)\"")->required();
  susp_cmd->add_option("--d", sd)->required();
  susp_cmd->add_option("--code", scode, "pre:period, e.g. 2:1,3")->required();
  susp_cmd->add_option("--power", spower, "also report h^k of the code");
  susp_cmd->add_option("--out", o.out_file);

  auto report = [&](const Error& e) {
    err << error_json(e).dump() << "\n";
    return e.is_numerical() ? 2 : 1;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(Error(ErrorKind::BadInput, e.what()));
  }

  try {
    if (analyze_cmd->parsed()) {
      emit(analyze(o), o.out_file, out);
    } else if (braid_cmd->parsed()) {
      const Inputs in = load_inputs(o);
      const BraidGeometry g = track_circle(in.lambda, level, turns, track_config(o));
      const ExtractedBraid eb = extract_word(g);
      out << format_word(eb.word) << "\n";
      if (!svg_file.empty()) {
        std::ofstream f(svg_file);
        if (!f) throw Error(ErrorKind::BadInput, "cannot write '" + svg_file + "'");
        write_svg(eb, f);
      }
      if (!csv_file.empty()) {
        std::ofstream f(csv_file);
        if (!f) throw Error(ErrorKind::BadInput, "cannot write '" + csv_file + "'");
        write_strands_csv(g, f);
      }
      if (!o.out_file.empty()) {
        json r{{"schema", kSchema}, {"command", "braid"}, {"config", config_json(o, &in)}};
        r["level"] = level;
        r["turns"] = turns;
        r["lambda"] = to_json(in.lambda);
        r["permutation"] = perm_json(g.permutation);
        r["word"] = format_word(eb.word);
        r["projection_angle"] = num(eb.angle);
        r["invariants"] = invariants_json(invariants(g));
        emit(r, o.out_file, out);
      }
    } else if (img_cmd->parsed()) {
      const Inputs in = load_inputs(o);
      const LevelCheck lc = level_monodromy_check(in.lambda, level, turns, track_config(o));
      json r{{"schema", kSchema}, {"command", "img-verify"}, {"config", config_json(o, &in)}};
      r["lambda"] = to_json(in.lambda);
      r["level"] = level;
      r["turns"] = turns;
      r["S_q"] = perm_json(lc.s);
      r["numeric"] = perm_json(lc.numeric);
      r["formula"] = perm_json(lc.formula);
      r["match"] = lc.match;
      emit(r, o.out_file, out);
    } else if (scan_cmd->parsed()) {
      const Inputs in = load_inputs(o);
      const EMembership e = e_membership(in.lambda);
      std::ostringstream table;
      table << "# in_E " << (e.in_E ? "true" : "false") << "\n";
      table << "#        re_z            im_z           |z|  on_circle\n";
      std::vector<cd> rs = e.all_roots;
      std::sort(rs.begin(), rs.end(), [](cd a, cd b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
      });
      char buf[160];
      for (cd z : rs) {
        const bool on = std::abs(std::abs(z) - 1.0) <= 1e-6;
        // values that print as zero lose their sign
        auto shown = [](double v) { return std::abs(v) < 5e-10 ? 0.0 : v; };
        std::snprintf(buf, sizeof buf, "%14.9f  %14.9f  %12.9f  %s\n", shown(z.real()), shown(z.imag()),
                      std::abs(z), on ? "yes" : "no");
        table << buf;
      }
      if (o.out_file.empty()) {
        out << table.str();
      } else {
        json r{{"schema", kSchema}, {"command", "scan-e"}, {"config", config_json(o, &in)}};
        r["lambda"] = to_json(in.lambda);
        r["in_E"] = e.in_E;
        r["roots"] = complex_list(rs);
        r["circle_roots"] = complex_list(e.circle_roots);
        emit(r, o.out_file, out);
      }
    } else if (quad_cmd->parsed()) {
      auto parse_c = [](const std::string& s, const char* name) {
        std::vector<double> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing");
          } catch (const std::exception&) {
            throw Error(ErrorKind::BadInput, std::string("--") + name + " must be re or re,im, got '" + s + "'");
          }
        }
        if (parts.empty() || parts.size() > 2)
          throw Error(ErrorKind::BadInput, std::string("--") + name + " must be re or re,im");
        return cd(parts[0], parts.size() == 2 ? parts[1] : 0.0);
      };
      const cd a = parse_c(qa, "a"), b = parse_c(qb, "b"), c = parse_c(qc, "c");
      const int s = quad_s(a, b, c);
      BraidWord w{2, std::vector<Letter>(static_cast<std::size_t>(s), Letter{1, 1})};
      json r{{"schema", kSchema}, {"command", "quad"}};
      r["a"] = complex_json(a);
      r["b"] = complex_json(b);
      r["c"] = complex_json(c);
      r["s"] = s;
      r["word"] = format_word(w);
      emit(r, o.out_file, out);
    } else if (factory_cmd->parsed()) {
      CycleSpec spec{fd, ffixed, fcycles, fradii};
      spec.with_default_radii();
      spec.validate();
      const TrackConfig cfg = track_config(o);
      ScaledParam sp;
      if (o.scale == "auto") {
        sp = cycle_type_params_auto(spec, cfg.escape);
      } else {
        double t = 0.0;
        try {
          t = std::stod(o.scale);
        } catch (const std::exception&) {
          throw Error(ErrorKind::BadInput, "--scale must be a number or 'auto'");
        }
        sp.lambda = cycle_type_params(spec, t);
        sp.scale = t;
        sp.report = admissibility_certificate(sp.lambda, cfg.escape);
      }
      json r{{"schema", kSchema}, {"command", "factory"}, {"config", config_json(o, nullptr)}};
      r["spec"] = {{"d", spec.d}, {"fixed", spec.fixed}, {"cycles", spec.cycles}, {"radii", json::array()}};
      for (double v : spec.radii) r["spec"]["radii"].push_back(num(v));
      r["scale"] = num(sp.scale);
      r["lambda"] = to_json(sp.lambda);
      r["admissibility"] = admissibility_json(sp.report);
      json verify{{"requested_cycle_type", spec.cycle_type()}};
      if (sp.report.admissible) {
        TrackConfig inner = cfg;
        inner.require_admissible = false;
        const BraidGeometry g = track_circle(sp.lambda, 1, 1, inner);
        verify["S_q"] = perm_json(g.permutation);
        verify["match"] = g.permutation.cycle_type() == spec.cycle_type();
      } else {
        verify["match"] = nullptr;
      }
      r["verification"] = verify;
      emit(r, o.out_file, out);
    } else if (susp_cmd->parsed()) {
      const Perm s = parse_cycles(sperm, sd);
      const Code c = parse_code(scode);
      c.validate(sd);
      const ComponentOrbit orb = component_orbit(s, sd, c);
      json r{{"schema", kSchema}, {"command", "suspension"}};
      r["perm"] = perm_json(s);
      r["d"] = sd;
      r["code"] = format_code(c.normalized());
      r["m_S"] = perm_order(s);
      json orbit = json::array();
      for (const Code& x : orb.orbit) orbit.push_back(format_code(x));
      r["orbit"] = orbit;
      r["winding"] = orb.winding;
      r["h_power"] = {{"k", spower}, {"code", format_code(h_apply(s, sd, c, spower))}};
      emit(r, o.out_file, out);
    }
  } catch (const Error& e) {
    return report(e);
  }
  return 0;
}

}  // namespace skewbraid::cli
