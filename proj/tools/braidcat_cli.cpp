// braidcat: braid-group representations from fusion-category data, link
// invariants of braid closures, and contextuality analysis of the induced
// measurement models. Output is deterministic: fixed ordering, 12
// significant digits everywhere.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

#include "braidcat/contextuality.hpp"
#include "braidcat/invariants.hpp"
#include "braidcat/jsonio.hpp"

namespace bc = braidcat;

namespace {

// exit codes: 0 success, 1 analysis/check failure, 2 usage or input error
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double roundtrip12(double x) { return std::strtod(bc::fmt12(x).c_str(), nullptr); }

/// Accumulates report fields once; renders as "key: value" text or JSON with
/// identical numeric content.
struct Out {
  bool json = false;
  bc::Json j;
  std::string text;

  void kv(const std::string& key, const std::string& value) {
    text += key + ": " + value + "\n";
    j[key] = value;
  }
  void num(const std::string& key, double value) {
    text += key + ": " + bc::fmt12(value) + "\n";
    j[key] = roundtrip12(value);
  }
  void integer(const std::string& key, long long value) {
    text += key + ": " + std::to_string(value) + "\n";
    j[key] = value;
  }
  void passfail(const std::string& key, bool pass) {
    kv(key, pass ? "pass" : "fail");
  }
  void complex_value(const std::string& key, bc::Cplx z) {
    text += key + ": " + bc::fmt_complex(z) + "\n";
    j[key] = bc::Json{{"re", roundtrip12(z.real())}, {"im", roundtrip12(z.imag())}};
  }
  void matrix(const std::string& key, const bc::Matrix& m) {
    text += key + ":\n";
    for (int r = 0; r < m.rows(); ++r) {
      std::string row;
      for (int c = 0; c < m.cols(); ++c) {
        if (c) row += "  ";
        row += bc::fmt_complex(m(r, c));
      }
      text += "  " + row + "\n";
    }
    bc::Json rows = bc::Json::array();
    for (int r = 0; r < m.rows(); ++r) {
      bc::Json row = bc::Json::array();
      for (int c = 0; c < m.cols(); ++c)
        row.push_back(bc::Json{{"re", roundtrip12(m(r, c).real())},
                               {"im", roundtrip12(m(r, c).imag())}});
      rows.push_back(std::move(row));
    }
    j[key] = std::move(rows);
  }
  void raw_line(const std::string& line) { text += line + "\n"; }

  void print() const {
    if (json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text;
  }
};

std::string read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw BadInput("cannot open file: " + path);
  std::string data;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) data.append(buf, n);
  std::fclose(f);
  return data;
}

bc::CategoryData load_category(const std::string& builtin,
                               const std::string& file) {
  if (!builtin.empty() && !file.empty())
    throw BadInput("use either --builtin or --file, not both");
  if (!builtin.empty()) {
    if (builtin == "fibonacci") return bc::fibonacci_category();
    if (builtin == "ising") return bc::ising_category();
    if (builtin.rfind("su2k:", 0) == 0) {
      int k = 0;
      try {
        k = std::stoi(builtin.substr(5));
      } catch (...) {
        throw BadInput("unknown builtin category: " + builtin);
      }
      try {
        return bc::su2k_category(k);
      } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
      }
    }
    throw BadInput("unknown builtin category: " + builtin);
  }
  if (!file.empty()) {
    try {
      bc::CategoryData cat = bc::category_from_json(read_file(file));
      cat.name = file;
      return cat;
    } catch (const BadInput&) {
      throw;
    } catch (const std::exception& e) {
      throw BadInput(std::string(e.what()));
    }
  }
  throw BadInput("a category source is required (--builtin or --file)");
}

int default_anyon(const bc::CategoryData& cat) {
  for (const bc::Label& l : cat.labels)
    if (!l.is_unit) return l.id;
  return cat.unit;
}

int resolve_label(const bc::CategoryData& cat, const std::string& name) {
  int id = cat.label_by_name(name);
  if (id < 0) throw BadInput("unknown label name: " + name);
  return id;
}

bc::BraidWord parse_word_or_die(const std::string& text, int strands) {
  try {
    return bc::parse_braid_word(text, strands);
  } catch (const bc::BraidParseError& e) {
    throw BadInput("braid word: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------------------

int cmd_category_verify(const std::string& builtin, const std::string& file,
                        double tol, Out& out) {
  bc::CategoryData cat = load_category(builtin, file);
  out.kv("category", cat.name);
  out.integer("labels", cat.n_labels());

  bc::CheckReport structure = bc::validate_structure(cat);
  bc::CheckReport pent = bc::verify_pentagon(cat, tol);
  bc::CheckReport hex = bc::verify_hexagon(cat, tol);
  bc::CheckReport unit = bc::verify_f_unitarity(cat, tol);
  bc::CheckReport mod = bc::verify_modularity(cat, tol);

  out.passfail("structure", structure.pass);
  out.num("pentagon_residual", pent.residual);
  out.passfail("pentagon", pent.pass);
  out.num("hexagon_residual", hex.residual);
  out.passfail("hexagon", hex.pass);
  out.num("f_unitarity_residual", unit.residual);
  out.passfail("f_unitarity", unit.pass);
  out.num("s_det_abs", mod.residual);
  out.passfail("modularity", mod.pass);
  out.num("tolerance", tol);
  bool ok = structure.pass && pent.pass && hex.pass && unit.pass && mod.pass;
  out.passfail("overall", ok);
  return ok ? kOk : kCheckFailed;
}

int cmd_category_info(const std::string& builtin, const std::string& file,
                      Out& out) {
  bc::CategoryData cat = load_category(builtin, file);
  out.kv("category", cat.name);
  out.integer("labels", cat.n_labels());
  std::string names;
  for (const bc::Label& l : cat.labels) {
    if (!names.empty()) names += " ";
    names += l.name;
  }
  out.kv("label_names", names);
  out.kv("unit", cat.labels[cat.unit].name);

  std::vector<double> dims = bc::quantum_dimensions(cat);
  std::string dimstr;
  for (double d : dims) {
    if (!dimstr.empty()) dimstr += " ";
    dimstr += bc::fmt12(d);
  }
  out.kv("quantum_dimensions", dimstr);
  std::string twiststr;
  for (const bc::Cplx& t : cat.twists) {
    if (!twiststr.empty()) twiststr += "  ";
    twiststr += bc::fmt_complex(t);
  }
  out.kv("twists", twiststr);
  out.matrix("s_matrix", bc::s_matrix(cat));
  return kOk;
}

struct RepArgs {
  std::string builtin, file, total_name, anyon_name, word_text;
  int strands = 3;
  double tol = 1e-10;
  unsigned long long seed = 0;
};

bc::BraidRep build_from_args(const RepArgs& args, const bc::CategoryData& cat,
                             Out& out) {
  if (args.strands < 2) throw BadInput("strand count must be >= 2");
  const int anyon = args.anyon_name.empty() ? default_anyon(cat)
                                            : resolve_label(cat, args.anyon_name);
  if (args.total_name.empty()) throw BadInput("--total is required");
  const int total = resolve_label(cat, args.total_name);
  std::vector<int> leaves(args.strands, anyon);
  out.kv("category", cat.name);
  out.kv("anyon", cat.labels[anyon].name);
  out.integer("strands", args.strands);
  out.kv("total", cat.labels[total].name);
  bc::BraidRep rep = bc::build_rep(cat, leaves, total);
  out.integer("dimension", rep.dim());
  return rep;
}

int cmd_rep_build(const RepArgs& args, Out& out) {
  bc::CategoryData cat = load_category(args.builtin, args.file);
  bc::BraidRep rep = build_from_args(args, cat, out);

  // fusion basis as an aligned index/internal-charge table
  std::size_t width = 1;
  for (const bc::FusionTree& t : rep.basis.trees) {
    std::string row;
    for (int l : t.internal) row += cat.labels[l].name + " ";
    width = std::max(width, row.size());
  }
  out.text += "basis:\n";
  bc::Json basis_rows = bc::Json::array();
  for (int i = 0; i < rep.basis.dim(); ++i) {
    std::string row;
    bc::Json names = bc::Json::array();
    for (int l : rep.basis.trees[i].internal) {
      row += cat.labels[l].name + " ";
      names.push_back(cat.labels[l].name);
    }
    row.resize(width, ' ');
    out.text += "  " + std::to_string(i) + ": " + row + "-> " +
                cat.labels[rep.total].name + "\n";
    basis_rows.push_back(std::move(names));
  }
  out.j["basis"] = std::move(basis_rows);

  for (std::size_t i = 0; i < rep.generators.size(); ++i)
    out.matrix("generator_" + std::to_string(i + 1), rep.generators[i]);
  return kOk;
}

int cmd_rep_apply(const RepArgs& args, Out& out) {
  bc::CategoryData cat = load_category(args.builtin, args.file);
  bc::BraidWord word = parse_word_or_die(args.word_text, args.strands);
  bc::BraidRep rep = build_from_args(args, cat, out);
  out.kv("word", args.word_text);
  out.matrix("matrix", bc::apply_word(rep, word));
  return kOk;
}

int cmd_rep_density(const RepArgs& args, Out& out) {
  bc::CategoryData cat = load_category(args.builtin, args.file);
  bc::BraidRep rep = build_from_args(args, cat, out);
  bc::LieClosureReport closure = bc::lie_closure_dim(rep.generators);
  const int full = rep.dim() * rep.dim() - 1;
  out.integer("closure_dimension", closure.dim);
  out.integer("full_dimension", full);
  if (closure.log_fallback) out.kv("note", closure.note);
  out.raw_line("closure " + std::to_string(closure.dim) + " of " +
               std::to_string(full));
  out.j["closure"] = std::to_string(closure.dim) + " of " + std::to_string(full);
  return kOk;
}

int cmd_rep_check(const RepArgs& args, Out& out) {
  bc::CategoryData cat = load_category(args.builtin, args.file);
  if (args.strands < 2) throw BadInput("strand count must be >= 2");
  const int anyon = args.anyon_name.empty() ? default_anyon(cat)
                                            : resolve_label(cat, args.anyon_name);
  std::vector<int> totals;
  std::vector<int> leaves(args.strands, anyon);
  if (!args.total_name.empty()) {
    totals.push_back(resolve_label(cat, args.total_name));
  } else {
    for (int t = 0; t < cat.n_labels(); ++t)
      if (bc::dimension(cat, leaves, t) > 0) totals.push_back(t);
  }
  out.kv("category", cat.name);
  out.kv("anyon", cat.labels[anyon].name);
  out.integer("strands", args.strands);
  std::string sector_names;
  for (int t : totals) {
    if (!sector_names.empty()) sector_names += " ";
    sector_names += cat.labels[t].name;
  }
  out.kv("sectors", sector_names);

  double unitarity = 0.0, relations = 0.0, inverse = 0.0;
  std::mt19937_64 rng(args.seed);
  for (int t : totals) {
    bc::BraidRep rep = bc::build_rep(cat, leaves, t);
    for (const bc::Matrix& g : rep.generators)
      unitarity = std::max(unitarity, bc::unitarity_residual(g));
    relations = std::max(relations, bc::verify_braid_relations(rep).residual);
    for (int sweep = 0; sweep < 20; ++sweep) {
      bc::BraidWord w;
      w.n_strands = args.strands;
      const int len = 1 + static_cast<int>(rng() % 40);
      for (int i = 0; i < len; ++i)
        w.letters.push_back(
            bc::BraidLetter{1 + static_cast<int>(rng() % (args.strands - 1)),
                            (rng() & 1) ? 1 : -1});
      bc::BraidWord round = w;
      bc::BraidWord inv = w.inverse();
      round.letters.insert(round.letters.end(), inv.letters.begin(),
                           inv.letters.end());
      bc::Matrix m = bc::apply_word(rep, round);
      inverse = std::max(
          inverse, bc::max_abs_diff(m, bc::Matrix::Identity(rep.dim(), rep.dim())));
    }
  }
  out.num("unitarity_residual", unitarity);
  out.num("braid_relations_residual", relations);
  out.num("word_inverse_residual", inverse);
  out.integer("seed", static_cast<long long>(args.seed));
  out.num("tolerance", args.tol);
  bool ok = unitarity <= args.tol && relations <= args.tol &&
            inverse <= args.tol;
  out.passfail("overall", ok);
  return ok ? kOk : kCheckFailed;
}

int cmd_jones(int strands, const std::string& word_text, Out& out) {
  if (strands < 1) throw BadInput("strand count must be >= 1");
  bc::BraidWord word = parse_word_or_die(word_text, strands);
  out.integer("strands", strands);
  out.kv("word", word_text);
  out.integer("writhe", bc::writhe(word));
  out.integer("components", bc::closure_component_count(word));
  bc::Cplx value = bc::jones_at_fibonacci_root(word);
  out.complex_value("jones", value);
  if (word.letters.size() <= 20) {
    bc::Cplx t = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
    bc::Cplx oracle = bc::kauffman_bracket_oracle(word, t);
    out.complex_value("oracle", oracle);
    out.num("difference", std::abs(value - oracle));
  }
  return kOk;
}

int analyze_model(const bc::EmpiricalModel& model, const std::string& source,
                  double lp_tol, Out& out) {
  out.kv("source", source);
  out.integer("measurements", model.scenario.n_measurements());
  out.integer("contexts", static_cast<long long>(model.scenario.contexts.size()));

  bc::CheckReport compat = bc::check_model(model);
  out.num("compatibility_residual", compat.residual);
  out.passfail("compatibility", compat.pass);
  if (!compat.pass) {
    out.kv("offending_overlap", compat.detail);
    out.print();
    return kCheckFailed;
  }

  bool binary = true;
  for (const auto& o : model.scenario.outcomes)
    binary = binary && std::find(o.begin(), o.end(), "1") != o.end();
  if (binary) {
    out.num("kcbs_value", bc::kcbs_value(model));
    out.num("classical_bound",
            bc::classical_bound(model.scenario,
                                std::vector<double>(
                                    model.scenario.n_measurements(), 1.0)));
  }

  bc::ContextualityVerdict verdict = bc::classify_hierarchy(model, lp_tol);
  out.num("lp_residual", verdict.lp_residual);
  out.kv("lp_verdict", verdict.lp_feasible ? "noncontextual" : "contextual");
  if (!verdict.lp_feasible)
    out.num("dual_certificate_violation", verdict.dual_violation);
  out.kv("hierarchy", bc::to_string(verdict.cls));
  out.kv("certificate", verdict.summary);
  out.num("lp_tolerance", lp_tol);
  out.num("support_tolerance", 1e-9);
  out.print();
  return kOk;
}

int cmd_contextuality(bool kcbs, const std::string& file, double lp_tol,
                      Out& out) {
  if (kcbs == !file.empty())
    throw BadInput("choose exactly one of --kcbs-fibonacci or --file");
  if (kcbs) {
    bc::KcbsConstruction k = bc::kcbs_projectors_fibonacci();
    bc::MeasurementScenario scenario =
        bc::scenario_from_projectors(k.projectors);
    bc::EmpiricalModel model =
        bc::empirical_from_state(k.state, k.projectors, scenario);
    out.integer("fusion_dimension", k.fusion_dim);
    out.num("max_state_value", bc::kcbs_value(k.state, k.projectors));
    return analyze_model(model, "kcbs-fibonacci", lp_tol, out);
  }
  bc::EmpiricalModel model;
  try {
    model = bc::model_from_json(read_file(file));
  } catch (const BadInput&) {
    throw;
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
  return analyze_model(model, file, lp_tol, out);
}

int cmd_scenario_check(const std::string& file, Out& out) {
  bc::EmpiricalModel model;
  try {
    model = bc::model_from_json(read_file(file));
  } catch (const BadInput&) {
    throw;
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
  out.kv("file", file);
  out.integer("measurements", model.scenario.n_measurements());
  out.integer("contexts", static_cast<long long>(model.scenario.contexts.size()));
  bc::CheckReport structure = bc::validate_scenario(model.scenario);
  out.passfail("scenario_structure", structure.pass);
  bc::CheckReport compat = bc::check_model(model);
  out.num("compatibility_residual", compat.residual);
  out.passfail("compatibility", compat.pass);
  if (!compat.pass) out.kv("offending_overlap", compat.detail);
  bool ok = structure.pass && compat.pass;
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"braid representations, link invariants, and contextuality"};
  app.require_subcommand(1);

  std::string builtin, file, format = "text", total_name, anyon_name;
  std::string word_text;
  double tol = 1e-10, lp_tol = 1e-7;
  int strands = 3;
  unsigned long long seed = 0;
  bool kcbs = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  };
  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("--builtin", builtin);
    cmd->add_option("--file", file);
  };

  CLI::App* category = app.add_subcommand("category", "category data checks");
  category->require_subcommand(1);
  CLI::App* cat_verify = category->add_subcommand("verify", "axiom suite");
  add_source(cat_verify);
  add_common(cat_verify);
  cat_verify->add_option("--tol", tol)->check(CLI::PositiveNumber);
  CLI::App* cat_info = category->add_subcommand("info", "summary tables");
  add_source(cat_info);
  add_common(cat_info);

  CLI::App* rep = app.add_subcommand("rep", "braid representations");
  rep->require_subcommand(1);
  CLI::App* rep_build = rep->add_subcommand("build", "dump generators");
  CLI::App* rep_check = rep->add_subcommand("check", "relation suite");
  CLI::App* rep_apply = rep->add_subcommand("apply", "evaluate a word");
  CLI::App* rep_density = rep->add_subcommand("density", "Lie closure");
  for (CLI::App* cmd : {rep_build, rep_check, rep_apply, rep_density}) {
    add_source(cmd);
    add_common(cmd);
    cmd->add_option("-n,--strands", strands);
    cmd->add_option("--total", total_name);
    cmd->add_option("--anyon", anyon_name);
    cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
  }
  rep_check->add_option("--seed", seed);
  rep_apply->add_option("-w,--word", word_text);

  CLI::App* jones = app.add_subcommand("jones", "link invariant of a closure");
  jones->add_option("-n,--strands", strands);
  jones->add_option("-w,--word", word_text);
  add_common(jones);

  CLI::App* ctx = app.add_subcommand("contextuality", "empirical model analysis");
  ctx->add_flag("--kcbs-fibonacci", kcbs);
  ctx->add_option("--file", file);
  ctx->add_option("--tol", lp_tol)->check(CLI::PositiveNumber);
  add_common(ctx);

  CLI::App* scenario = app.add_subcommand("scenario", "scenario file checks");
  scenario->require_subcommand(1);
  CLI::App* scen_check = scenario->add_subcommand("check", "validate a model file");
  scen_check->add_option("--file", file);
  add_common(scen_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }

  Out out;
  out.json = (format == "json");
  try {
    int rc = 0;
    if (cat_verify->parsed()) {
      rc = cmd_category_verify(builtin, file, tol, out);
      out.print();
    } else if (cat_info->parsed()) {
      rc = cmd_category_info(builtin, file, out);
      out.print();
    } else if (rep_build->parsed() || rep_apply->parsed() ||
               rep_density->parsed() || rep_check->parsed()) {
      RepArgs args{builtin, file, total_name, anyon_name, word_text,
                   strands, tol, seed};
      if (rep_build->parsed()) rc = cmd_rep_build(args, out);
      if (rep_apply->parsed()) rc = cmd_rep_apply(args, out);
      if (rep_density->parsed()) rc = cmd_rep_density(args, out);
      if (rep_check->parsed()) rc = cmd_rep_check(args, out);
      out.print();
    } else if (jones->parsed()) {
      rc = cmd_jones(strands, word_text, out);
      out.print();
    } else if (ctx->parsed()) {
      rc = cmd_contextuality(kcbs, file, lp_tol, out);  // prints internally
    } else if (scen_check->parsed()) {
      rc = cmd_scenario_check(file, out);
      out.print();
    } else {
      std::cerr << "error: no subcommand\n";
      return kBadInput;
    }
    return rc;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
