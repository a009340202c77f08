#include "scriptgeo/cli.hpp"

#include "scriptgeo/catalog.hpp"
#include "scriptgeo/equivalence.hpp"
#include "scriptgeo/format.hpp"
#include "scriptgeo/homology.hpp"
#include "scriptgeo/ops.hpp"
#include "scriptgeo/products.hpp"
#include "scriptgeo/spectral.hpp"
#include "scriptgeo/tightness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace scriptgeo {

using json = nlohmann::ordered_json;

namespace {

std::string slurp(std::istream& is) {
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> v;
  for (auto& t : split_top(text, ',')) {
    if (t.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw BadParameter("not an integer: " + t);
    }
  }
  return v;
}

json script_json(const Script& s) {
  json j;
  j["name"] = s.name();
  j["text"] = print_script(s);
  return j;
}

std::string mixed_text(const MixedChain& m) {
  std::vector<std::pair<std::string, Integer>> t;
  for (auto& [c, k] : m.terms) t.push_back({c.name, k});
  return format_terms(t);
}

json group_json(const HomologyGroup& h) {
  json t = json::array();
  for (auto& x : h.torsion) t.push_back(to_string(x));
  return json{{"rank", h.rank}, {"torsion", t}, {"text", to_string(h)}};
}

std::set<CellId> cells_of(const Script& s, const std::vector<std::string>& names) {
  std::set<CellId> r;
  for (auto& n : names)
    for (auto& part : split_top(n, ','))
      if (!part.empty()) r.insert(resolve_cell(s, part));
  return r;
}

struct Ctx {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
  int code = 0;

  Script load(const std::string& spec) { return load_source(spec, in); }
  void emit_script(const Script& s) {
    if (as_json)
      out << script_json(s).dump(2) << "\n";
    else
      out << print_script(s);
  }
  void emit(const json& j) { out << j.dump(2) << "\n"; }
};

}  // namespace

Script load_source(const std::string& spec, std::istream& in) {
  if (spec == "-") return parse_script(slurp(in));
  if (spec.rfind("catalog:", 0) == 0) return catalog_get(spec.substr(8)).script;
  if (spec.rfind("gen:", 0) == 0) {
    std::string rest = spec.substr(4);
    auto colon = rest.find(':');
    std::string kind = rest.substr(0, colon);
    std::vector<int> args = colon == std::string::npos ? std::vector<int>{} : int_list(rest.substr(colon + 1));
    return generate(kind, args);
  }
  std::ifstream f(spec);
  if (!f) throw BadParameter("cannot open " + spec);
  return parse_script(slurp(f));
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Ctx ctx{in, out, err};
  CLI::App app{"script geometry toolkit", "scriptgeo"};
  app.require_subcommand(1);
  app.add_flag("--json", ctx.as_json, "machine-readable output");
  app.set_version_flag("--version", "scriptgeo 1.0");

  std::string src, src2;
  std::function<void()> action;

  auto with_source = [&](CLI::App* sub) { sub->add_option("source", src, "FILE, -, catalog:ID or gen:KIND:ARGS")->required(); };

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check the complex axioms");
  with_source(validate_cmd);
  validate_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      auto v = validate(s);
      if (ctx.as_json) {
        json list = json::array();
        for (auto& x : v) list.push_back({{"cell", x.cell.name}, {"dim", x.cell.dim}, {"message", x.message}});
        ctx.emit({{"valid", v.empty()}, {"violations", list}});
      } else {
        for (auto& x : v) out << to_string(x.cell) << ": " << x.message << "\n";
        out << (v.empty() ? "valid" : "invalid") << "\n";
      }
      ctx.code = v.empty() ? 0 : 1;
    };
  });

  // info
  auto* info_cmd = app.add_subcommand("info", "summary of a script");
  with_source(info_cmd);
  info_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      json counts = json::object();
      for (auto d : s.dims()) counts[std::to_string(d)] = s.cells(d).size();
      json j{{"name", s.name()},
             {"base_dim", s.base_dim()},
             {"top_dim", s.top_dim()},
             {"accumulator", s.has_accumulator()},
             {"modulus", s.modulus() ? json(to_string(*s.modulus())) : json(nullptr)},
             {"cells", counts},
             {"valid", is_valid(s)},
             {"unitary", is_unitary(s)},
             {"minimal", is_minimal(s)}};
      if (ctx.as_json) {
        ctx.emit(j);
        return;
      }
      out << "name: " << s.name() << "\n";
      if (s.modulus()) out << "mod: " << *s.modulus() << "\n";
      out << "accumulator: " << (s.has_accumulator() ? "yes" : "no") << "\n";
      for (auto d : s.dims()) out << "dim " << d << ": " << s.cells(d).size() << " cells\n";
      out << "valid: " << (is_valid(s) ? "yes" : "no") << "\n";
      out << "unitary: " << (is_unitary(s) ? "yes" : "no") << "\n";
      out << "minimal: " << (is_minimal(s) ? "yes" : "no") << "\n";
    };
  });

  // offprint
  auto* off_cmd = app.add_subcommand("offprint", "support of each boundary");
  with_source(off_cmd);
  off_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      json j = json::object();
      for (auto& [c, faces] : offprint(s)) {
        json f = json::array();
        for (auto& x : faces) f.push_back(x.name);
        if (ctx.as_json) {
          j[c.name] = f;
        } else {
          out << c.name << ":";
          for (auto& x : faces) out << " " << x.name;
          out << "\n";
        }
      }
      if (ctx.as_json) ctx.emit(j);
    };
  });

  // homology
  auto* hom_cmd = app.add_subcommand("homology", "integral homology via Smith normal form");
  with_source(hom_cmd);
  std::optional<int> hom_k;
  std::vector<std::string> rel_u, rel_v;
  hom_cmd->add_option("-k", hom_k, "single dimension");
  hom_cmd->add_option("--relative", rel_u, "cells of U (relative homology)")->expected(1, -1);
  hom_cmd->add_option("rest", rel_v, "cells of V, after --");
  hom_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      if (!rel_u.empty()) {
        auto h = relative_homology(s, cells_of(s, rel_u), cells_of(s, rel_v));
        if (ctx.as_json)
          ctx.emit(group_json(h));
        else
          out << to_string(h) << "\n";
        return;
      }
      std::map<int, HomologyGroup> hs;
      if (hom_k)
        hs[*hom_k] = homology(s, *hom_k);
      else
        hs = homology_all(s);
      json j = json::object();
      for (auto& [k, h] : hs) {
        if (ctx.as_json)
          j[std::to_string(k)] = group_json(h);
        else
          out << "H" << k << " = " << to_string(h) << "\n";
      }
      if (ctx.as_json) ctx.emit(j);
    };
  });

  // matrix
  auto* mat_cmd = app.add_subcommand("matrix", "dump the boundary matrix of dimension k");
  with_source(mat_cmd);
  int mat_k = 1;
  mat_cmd->add_option("-k", mat_k, "dimension")->required();
  mat_cmd->callback([&] {
    action = [&] { write_matrix(out, boundary_matrix(ctx.load(src), mat_k)); };
  });

  // tight
  auto* tight_cmd = app.add_subcommand("tight", "tightness of the script, a cell, or a chain");
  with_source(tight_cmd);
  std::string tight_cell, tight_chain;
  tight_cmd->add_option("--cell", tight_cell, "single cell");
  tight_cmd->add_option("--chain", tight_chain, "c-tightness of a chain");
  tight_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      bool ok;
      if (!tight_cell.empty()) {
        ok = is_cell_tight(s, resolve_cell(s, tight_cell));
        if (ctx.as_json)
          ctx.emit({{"cell", tight_cell}, {"tight", ok}});
        else
          out << (ok ? "tight" : "not tight") << "\n";
      } else if (!tight_chain.empty()) {
        ok = is_c_tight(s, parse_chain(s, tight_chain));
        if (ctx.as_json)
          ctx.emit({{"chain", tight_chain}, {"tight", ok}});
        else
          out << (ok ? "c-tight" : "not c-tight") << "\n";
      } else {
        auto rep = script_tightness(s);
        ok = rep.script_tight;
        if (ctx.as_json) {
          json cells = json::array();
          for (auto& v : rep.cells) {
            const char* st = v.status == CellVerdict::Status::Tight      ? "tight"
                             : v.status == CellVerdict::Status::NotTight ? "not-tight"
                                                                         : "pathological";
            cells.push_back({{"cell", v.cell.name}, {"dim", v.cell.dim}, {"status", st}, {"reason", v.reason}});
          }
          ctx.emit({{"tight", ok}, {"unitary", is_unitary(s)}, {"cells", cells}});
        } else {
          for (auto& v : rep.cells)
            if (v.status != CellVerdict::Status::Tight) out << v.cell.name << ": " << v.reason << "\n";
          out << (ok ? "tight" : "not tight") << "\n";
        }
      }
      ctx.code = ok ? 0 : 1;
    };
  });

  // minimize
  auto* min_cmd = app.add_subcommand("minimize", "divide every boundary by its content");
  with_source(min_cmd);
  min_cmd->callback([&] { action = [&] { ctx.emit_script(minimize(ctx.load(src))); }; });

  // dual
  auto* dual_cmd = app.add_subcommand("dual", "dual script, or the obstruction");
  with_source(dual_cmd);
  bool dual_force = false, dual_unit = false;
  dual_cmd->add_flag("--force", dual_force, "print the dual boundary operator even when no dual script exists");
  dual_cmd->add_flag("--unit-points", dual_unit, "reject new points whose accumulator coefficient is not +-1");
  dual_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      auto r = dual_script(s, dual_unit);
      if (auto* d = std::get_if<Script>(&r)) {
        ctx.emit_script(*d);
        return;
      }
      auto& ob = std::get<DualObstruction>(r);
      json cells = json::array();
      for (auto& c : ob.cells) cells.push_back(c.name);
      json ops = json::object();
      std::ostringstream text;
      if (dual_force) {
        std::vector<CellId> all;
        if (s.has_accumulator()) all.push_back(s.accumulator());
        for (auto& c : s.all_cells()) all.push_back(c);
        for (auto& c : all) {
          std::string f = format_chain(s, dual_boundary(s, c));
          ops[c.name] = f;
          text << "d" << c.name << " = " << f << "\n";
        }
      }
      if (ctx.as_json) {
        json j{{"obstruction", to_string(ob.kind)}, {"cells", cells}, {"message", ob.message}};
        if (dual_force) j["d"] = ops;
        ctx.emit(j);
      } else {
        err << "no dual script: " << to_string(ob.kind) << " (" << ob.message << ")\n";
        out << text.str();
      }
      ctx.code = 1;
    };
  });

  // orientable
  auto* or_cmd = app.add_subcommand("orientable", "search for a +-1 top cycle");
  with_source(or_cmd);
  or_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      auto o = orientation(s);
      if (ctx.as_json)
        ctx.emit({{"orientable", o.has_value()}, {"orientation", o ? json(format_chain(s, *o)) : json(nullptr)}});
      else if (o)
        out << "orientable\n" << format_chain(s, *o) << "\n";
      else
        out << "non-orientable\n";
      ctx.code = o ? 0 : 1;
    };
  });

  // spectrum / sound / monogenic / harmonic
  auto* spec_cmd = app.add_subcommand("spectrum", "Dirac eigenvalues with multiplicities");
  with_source(spec_cmd);
  spec_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      auto sp = spectrum(s);
      if (ctx.as_json) {
        json ev = json::array();
        for (auto& c : sp.eigenvalues) ev.push_back({{"value", c.value}, {"multiplicity", c.multiplicity}});
        json basis = json::array();
        for (auto& m : monogenic_kernel(s)) basis.push_back(mixed_text(m));
        ctx.emit({{"eigenvalues", ev}, {"sound", sp.sound_exact.convert_to<long long>()}, {"monogenic_basis", basis}});
      } else {
        for (auto& c : sp.eigenvalues) out << std::setprecision(12) << c.value << " x" << c.multiplicity << "\n";
        out << "sound " << sp.sound_exact << "\n";
      }
    };
  });
  auto* sound_cmd = app.add_subcommand("sound", "trace of the Hodge Laplacian");
  with_source(sound_cmd);
  sound_cmd->callback([&] {
    action = [&] {
      Integer v = sound(ctx.load(src));
      if (ctx.as_json)
        ctx.emit({{"sound", to_string(v)}});
      else
        out << v << "\n";
    };
  });
  for (auto which : {"monogenic", "harmonic"}) {
    auto* cmd = app.add_subcommand(which, std::string("basis of ") + which + " chains");
    with_source(cmd);
    bool harm = std::string(which) == "harmonic";
    cmd->callback([&, harm] {
      action = [&, harm] {
        Script s = ctx.load(src);
        auto basis = harm ? harmonic_kernel(s) : monogenic_kernel(s);
        json j = json::array();
        for (auto& m : basis) {
          if (ctx.as_json)
            j.push_back(mixed_text(m));
          else
            out << mixed_text(m) << "\n";
        }
        if (ctx.as_json) ctx.emit({{"basis", j}});
        else if (basis.empty())
          out << "0\n";
      };
    });
  }

  // product
  auto* prod_cmd = app.add_subcommand("product", "cubic or simplicial Cartesian product");
  std::string kind = "cubic";
  bool extend = false, renorm = false;
  std::vector<std::string> factors;
  prod_cmd->add_option("--kind", kind, "cubic|simplicial")->check(CLI::IsMember({"cubic", "simplicial"}));
  prod_cmd->add_flag("--extend", extend, "add the accumulator to a cubic product");
  prod_cmd->add_flag("--renormalize", renorm, "shift a simplicial product to base dimension 0");
  prod_cmd->add_option("factors", factors, "two or more sources")->expected(2, -1)->required();
  prod_cmd->callback([&] {
    action = [&] {
      std::vector<Script> fs;
      for (auto& f : factors) fs.push_back(ctx.load(f));
      Script r = kind == "cubic" ? cubic_product(fs) : simplicial_product(fs, renorm);
      if (kind == "cubic" && extend) r = extend_with_accumulator(r);
      ctx.emit_script(r);
    };
  });

  // refine
  auto* ref_cmd = app.add_subcommand("refine", "simplicial refinement");
  with_source(ref_cmd);
  bool show_sigma = false;
  ref_cmd->add_flag("--sigma", show_sigma, "also print the cell map");
  ref_cmd->callback([&] {
    action = [&] {
      Script s = ctx.load(src);
      auto r = simplicial_refine(s);
      if (ctx.as_json) {
        json j = script_json(r.script);
        if (show_sigma) {
          json m = json::object();
          for (auto& [c, ch] : r.sigma) m[c.name] = format_chain(r.script, ch);
          j["sigma"] = m;
        }
        ctx.emit(j);
        return;
      }
      out << print_script(r.script);
      if (show_sigma)
        for (auto& c : s.all_cells()) out << "# sigma " << c.name << " = " << format_chain(r.script, r.sigma.at(c)) << "\n";
    };
  });

  // op run
  auto* op_cmd = app.add_subcommand("op", "operation pipelines");
  op_cmd->require_subcommand(1);
  auto* op_run = op_cmd->add_subcommand("run", "run a pipeline file on a script");
  std::string pipeline_file;
  op_run->add_option("pipeline", pipeline_file, "pipeline file")->required();
  op_run->add_option("source", src, "script source")->required();
  op_run->callback([&] {
    action = [&] {
      std::ifstream f(pipeline_file);
      if (!f) throw BadParameter("cannot open " + pipeline_file);
      auto r = run_pipeline(ctx.load(src), slurp(f));
      for (auto& w : r.log.warnings) err << "warning: " << w << "\n";
      if (ctx.as_json) {
        json j = script_json(r.script);
        j["log"] = r.log.ops;
        j["warnings"] = r.log.warnings;
        ctx.emit(j);
      } else {
        out << print_script(r.script);
      }
    };
  });

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "parametric generators");
  std::string gen_kind;
  std::vector<std::string> gen_args;
  gen_cmd->add_option("kind", gen_kind, "interval|circle|sphere|ball|simplex|cube|multicube|grid|line|polygon|torus|addition")
      ->required();
  gen_cmd->add_option("args", gen_args, "integer parameters");
  gen_cmd->callback([&] {
    action = [&] {
      std::vector<int> a;
      for (auto& x : gen_args)
        for (int v : int_list(x)) a.push_back(v);
      ctx.emit_script(generate(gen_kind, a));
    };
  });

  // catalog
  auto* cat_cmd = app.add_subcommand("catalog", "worked example scripts");
  cat_cmd->require_subcommand(1);
  auto* cat_list = cat_cmd->add_subcommand("list", "list entry ids");
  cat_list->callback([&] {
    action = [&] {
      if (ctx.as_json) {
        json j = json::array();
        for (auto& id : catalog_list()) j.push_back({{"id", id}, {"provenance", catalog_get(id).provenance}});
        ctx.emit(j);
      } else {
        for (auto& id : catalog_list()) out << id << "\n";
      }
    };
  });
  auto* cat_show = cat_cmd->add_subcommand("show", "print an entry");
  std::string cat_id;
  cat_show->add_option("id", cat_id, "entry id")->required();
  cat_show->callback([&] {
    action = [&] {
      auto& e = catalog_get(cat_id);
      if (ctx.as_json) {
        json j = script_json(e.script);
        j["provenance"] = e.provenance;
        j["notes"] = e.notes;
        if (e.expected.sound) j["sound"] = to_string(*e.expected.sound);
        ctx.emit(j);
      } else {
        out << print_script(e.script);
      }
    };
  });

  // reduce
  auto* red_cmd = app.add_subcommand("reduce", "coefficients modulo n");
  with_source(red_cmd);
  std::string modulus;
  red_cmd->add_option("--mod", modulus, "modulus")->required();
  red_cmd->callback([&] {
    action = [&] {
      Integer n;
      try {
        n = Integer(modulus);
      } catch (const std::exception&) {
        throw BadParameter("not an integer: " + modulus);
      }
      ctx.emit_script(reduce_mod(ctx.load(src), n));
    };
  });

  // equiv
  auto* eq_cmd = app.add_subcommand("equiv", "decide equivalence up to renaming and sign flips");
  eq_cmd->add_option("a", src, "first source")->required();
  eq_cmd->add_option("b", src2, "second source")->required();
  eq_cmd->callback([&] {
    action = [&] {
      Script a = ctx.load(src), b = ctx.load(src2);
      auto w = find_equivalence(a, b);
      if (ctx.as_json) {
        json m = json::object();
        if (w)
          for (auto& [c, t] : w->map) m[c.name] = {{"to", t.first}, {"sign", t.second}};
        ctx.emit({{"equivalent", w.has_value()}, {"map", m}});
      } else if (w) {
        out << "equivalent\n";
        for (auto& [c, t] : w->map) out << c.name << " -> " << (t.second < 0 ? "-" : "") << t.first << "\n";
      } else {
        out << "not equivalent\n";
      }
      ctx.code = w ? 0 : 1;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return ctx.code;
}

}  // namespace scriptgeo
