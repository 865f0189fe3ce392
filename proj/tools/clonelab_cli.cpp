// Command-line surface over the library: function inspection, clone slices,
// the Galois connection, decompositions, richness conditions, Boolean class
// identification, characteristics, and the verification suites.
//
// Exit status: 0 when the command succeeds and any checked property holds,
// 1 when a checked property fails (a counterexample or failure report is
// written), 2 on input or capacity errors.
#include <CLI11.hpp>

#include <iostream>

#include "clonelab/catalog.hpp"
#include "clonelab/characteristic.hpp"
#include "clonelab/conditions.hpp"
#include "clonelab/decomposition.hpp"
#include "clonelab/io.hpp"
#include "clonelab/post_classes.hpp"
#include "clonelab/verify.hpp"

using namespace clonelab;

namespace {

struct Options {
  std::string gens_path;
  std::string in_path;
  std::string out_path;
  std::string qset_path;
  std::string family_path;
  std::string left_path;
  std::string right_path;
  std::vector<std::string> qset_paths;
  std::string which;
  std::string entry_name;
  std::string class_name;
  std::string elements;
  std::string cells;
  std::string sigma;
  std::string positions;
  std::string out_dir;
  int k = 3;
  int m = 2;
  int n = 3;
  int arity = 2;
  int bound = 3;
  int i = 0;
  int p = 0;
  int q = 1;
  int a = 0;
  std::uint64_t cap = kDefaultSliceCap;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  int q_size = 0;
};

GeneratorSet load_gens(const std::string& path) {
  return io::generators_from_json(io::read_json_file(path));
}

QSet load_qset(const std::string& path) {
  return io::qset_from_json(io::read_json_file(path));
}

void emit(const Options& opt, const io::json& j) {
  if (!opt.out_path.empty()) {
    io::write_json_file(opt.out_path, j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

std::vector<Value> parse_values(const std::string& csv) {
  std::vector<Value> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(static_cast<Value>(std::stoi(item)));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

VerifyMode parse_mode(const Options& opt) {
  if (opt.exhaustive) return VerifyMode::Exhaustive();
  if (opt.samples == 0) {
    throw std::invalid_argument(
        "sampled mode needs --samples and --seed; or pass --exhaustive");
  }
  return VerifyMode::Sampled(opt.samples, opt.seed);
}

int exit_for(const VerificationReport& report) {
  switch (report.status) {
    case VerifyStatus::Passed: return report.failures.empty() ? 0 : 1;
    case VerifyStatus::Failed: return 1;
    case VerifyStatus::PremiseFailed:
    case VerifyStatus::PremiseVacuous: return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation with clones of finite functions"};
  app.require_subcommand(1);
  Options opt;
  int exit_code = 0;

  // fn: inspect and classify single functions.
  auto* fn = app.add_subcommand("fn", "inspect a function table");
  auto* fn_classify = fn->add_subcommand("classify", "shape report");
  fn_classify->add_option("--in", opt.in_path)->required();
  fn_classify->add_option("--out", opt.out_path);
  fn_classify->callback([&] {
    const auto f = io::function_from_json(io::read_json_file(opt.in_path));
    emit(opt, io::to_json(classify_function(f)));
  });
  auto* fn_project = fn->add_subcommand("projection", "write a projection");
  fn_project->add_option("--k", opt.k)->required();
  fn_project->add_option("--arity", opt.arity)->required();
  fn_project->add_option("--index", opt.i)->required();
  fn_project->add_option("--out", opt.out_path);
  fn_project->callback([&] {
    emit(opt, io::to_json(FiniteFunction::projection(opt.k, opt.arity, opt.i)));
  });

  // clone: slices, minimal arity, restriction, symmetrization.
  auto* clone = app.add_subcommand("clone", "clone slices and transforms");
  auto* clone_slice = clone->add_subcommand("slice", "exact per-arity slice");
  clone_slice->add_option("--gens", opt.gens_path)->required();
  clone_slice->add_option("--arity", opt.arity)->required();
  clone_slice->add_option("--cells", opt.cells);
  clone_slice->add_option("--cap", opt.cap);
  clone_slice->add_option("--out", opt.out_path);
  clone_slice->callback([&] {
    const auto gens = load_gens(opt.gens_path);
    if (opt.cells.empty()) {
      emit(opt, io::to_json(slice(gens, opt.arity, opt.cap)));
    } else {
      std::vector<std::uint64_t> cells;
      for (int c : parse_ints(opt.cells)) {
        cells.push_back(static_cast<std::uint64_t>(c));
      }
      emit(opt, io::to_json(slice_on_cells(gens, opt.arity, cells, opt.cap)));
    }
  });
  auto* clone_r = clone->add_subcommand("r", "minimal non-projection arity");
  clone_r->add_option("--gens", opt.gens_path)->required();
  clone_r->add_option("--bound", opt.bound);
  clone_r->add_option("--out", opt.out_path);
  clone_r->callback([&] {
    emit(opt, io::to_json(
                  min_nonprojection_arity(load_gens(opt.gens_path), opt.bound)));
  });
  auto* clone_restrict = clone->add_subcommand("restrict", "carrier restriction");
  clone_restrict->add_option("--in", opt.in_path)->required();
  clone_restrict->add_option("--elements", opt.elements)->required();
  clone_restrict->add_option("--out", opt.out_path);
  clone_restrict->callback([&] {
    const auto set = io::function_set_from_json(io::read_json_file(opt.in_path));
    emit(opt, io::to_json(restrict_carrier(set, parse_values(opt.elements))));
  });
  auto* clone_sym = clone->add_subcommand("symmetrize", "conjugation closure");
  clone_sym->add_option("--gens", opt.gens_path)->required();
  clone_sym->add_option("--out", opt.out_path);
  clone_sym->callback([&] {
    emit(opt, io::generators_to_json(symmetric_closure(load_gens(opt.gens_path))));
  });
  auto* clone_cons = clone->add_subcommand("conservative", "all conservative functions");
  clone_cons->add_option("--k", opt.k)->required();
  clone_cons->add_option("--arity", opt.arity)->required();
  clone_cons->add_option("--cap", opt.cap);
  clone_cons->add_option("--out", opt.out_path);
  clone_cons->callback([&] {
    emit(opt, io::to_json(conservative_slice(opt.k, opt.arity, opt.cap)));
  });
  auto* clone_iso = clone->add_subcommand("isocheck", "natural isomorphism test");
  clone_iso->add_option("--sigma", opt.sigma)->required();
  clone_iso->add_option("--left", opt.left_path)->required();
  clone_iso->add_option("--right", opt.right_path)->required();
  clone_iso->add_option("--bound", opt.bound);
  clone_iso->callback([&] {
    const auto left = io::function_set_from_json(io::read_json_file(opt.left_path));
    const auto right = io::function_set_from_json(io::read_json_file(opt.right_path));
    const bool ok =
        is_natural_isomorphism(parse_values(opt.sigma), left, right, opt.bound);
    std::cout << (ok ? "isomorphic" : "not isomorphic") << "\n";
    exit_code = ok ? 0 : 1;
  });

  // galois: preservation, membership, closure, enumeration, polymorphisms.
  auto* galois = app.add_subcommand("galois", "the preservation connection");
  auto* g_pres = galois->add_subcommand("preserves", "single function test");
  g_pres->add_option("--fn", opt.in_path)->required();
  g_pres->add_option("--qset", opt.qset_path)->required();
  g_pres->callback([&] {
    const bool ok = preserves(io::function_from_json(io::read_json_file(opt.in_path)),
                              load_qset(opt.qset_path));
    std::cout << (ok ? "preserves" : "does not preserve") << "\n";
    exit_code = ok ? 0 : 1;
  });
  auto* g_ininv = galois->add_subcommand("ininv", "invariance membership");
  g_ininv->add_option("--gens", opt.gens_path)->required();
  g_ininv->add_option("--qset", opt.qset_path)->required();
  g_ininv->callback([&] {
    const bool ok = in_inv(load_gens(opt.gens_path), load_qset(opt.qset_path));
    std::cout << (ok ? "invariant" : "not invariant") << "\n";
    exit_code = ok ? 0 : 1;
  });
  auto* g_closure = galois->add_subcommand("closure", "least invariant superset");
  g_closure->add_option("--gens", opt.gens_path)->required();
  g_closure->add_option("--qset", opt.qset_path)->required();
  g_closure->add_option("--out", opt.out_path);
  g_closure->callback([&] {
    emit(opt, io::to_json(invariant_closure(load_gens(opt.gens_path),
                                            load_qset(opt.qset_path))));
  });
  auto* g_inv = galois->add_subcommand("inv", "enumerate invariant sets");
  g_inv->add_option("--gens", opt.gens_path)->required();
  g_inv->add_option("--m", opt.m)->required();
  g_inv->add_option("--cell-cap", opt.cap);
  g_inv->add_option("--out", opt.out_path);
  g_inv->callback([&] {
    io::json out = io::json::array();
    for (const auto& h : enumerate_inv(load_gens(opt.gens_path), opt.m,
                                       opt.cap == kDefaultSliceCap ? 16 : opt.cap)) {
      out.push_back(io::to_json(h));
    }
    emit(opt, out);
  });
  auto* g_pol = galois->add_subcommand("pol", "bounded polymorphisms");
  g_pol->add_option("--qsets", opt.qset_paths)->required();
  g_pol->add_option("--max-arity", opt.arity)->required();
  g_pol->add_option("--k", opt.k)->required();
  g_pol->add_option("--cap", opt.cap);
  g_pol->add_option("--out", opt.out_path);
  g_pol->callback([&] {
    std::vector<QSet> hs;
    for (const auto& path : opt.qset_paths) hs.push_back(load_qset(path));
    emit(opt, io::to_json(pol_bounded(hs, opt.k, opt.arity, opt.cap)));
  });
  auto* g_reindex = galois->add_subcommand("reindex", "rows composed with a map");
  g_reindex->add_option("--qset", opt.qset_path)->required();
  g_reindex->add_option("--map", opt.positions)->required();
  g_reindex->add_option("--out", opt.out_path);
  g_reindex->callback([&] {
    emit(opt, io::to_json(reindex(load_qset(opt.qset_path),
                                  parse_ints(opt.positions))));
  });
  auto* g_restrict = galois->add_subcommand("restrict", "restriction to positions");
  g_restrict->add_option("--qset", opt.qset_path)->required();
  g_restrict->add_option("--positions", opt.positions)->required();
  g_restrict->add_option("--out", opt.out_path);
  g_restrict->callback([&] {
    emit(opt, io::to_json(restrict_qset(load_qset(opt.qset_path),
                                        parse_ints(opt.positions))));
  });
  auto* g_extend = galois->add_subcommand("extend", "cylinder over positions");
  g_extend->add_option("--qset", opt.qset_path)->required();
  g_extend->add_option("--positions", opt.positions)->required();
  g_extend->add_option("--q-size", opt.q_size)->required();
  g_extend->add_option("--out", opt.out_path);
  g_extend->callback([&] {
    emit(opt, io::to_json(extend_qset(load_qset(opt.qset_path),
                                      parse_ints(opt.positions), opt.q_size)));
  });

  // decomp: cylinders, decomposability, index families, separation.
  auto* decomp = app.add_subcommand("decomp", "decompositions of row sets");
  auto* d_apply = decomp->add_subcommand("apply", "cylinders and intersection");
  d_apply->add_option("--qset", opt.qset_path)->required();
  d_apply->add_option("--family", opt.family_path)->required();
  d_apply->add_option("--out", opt.out_path);
  d_apply->callback([&] {
    const auto result = decomposition_apply(
        load_qset(opt.qset_path),
        io::family_from_json(io::read_json_file(opt.family_path)));
    io::json cylinders = io::json::array();
    for (const auto& c : result.cylinders) cylinders.push_back(io::to_json(c));
    emit(opt, io::json{{"cylinders", cylinders},
                       {"intersection", io::to_json(result.intersection)}});
  });
  auto* d_check = decomp->add_subcommand("check", "decomposability");
  d_check->add_option("--qset", opt.qset_path)->required();
  d_check->add_option("--family", opt.family_path)->required();
  d_check->callback([&] {
    const bool ok = is_decomposable(
        load_qset(opt.qset_path),
        io::family_from_json(io::read_json_file(opt.family_path)));
    std::cout << (ok ? "decomposable" : "not decomposable") << "\n";
    exit_code = ok ? 0 : 1;
  });
  auto* d_fam = decomp->add_subcommand("families", "derived index families");
  d_fam->add_option("--qset", opt.qset_path)->required();
  d_fam->add_option("--n", opt.n);
  d_fam->add_option("--out", opt.out_path);
  d_fam->callback([&] {
    const auto fams = index_families(load_qset(opt.qset_path), opt.n);
    io::json pairs20 = io::json::array(), pairs2id = io::json::array(),
             pairs21 = io::json::array();
    for (const auto& [p, q] : fams.perm_linked_pairs)
      pairs20.push_back({p, q});
    for (const auto& [p, q] : fams.equal_pairs) pairs2id.push_back({p, q});
    for (const auto& [p, q] : fams.anchored_pairs) pairs21.push_back({p, q});
    io::json within = io::json::object();
    for (const auto& [b, positions] : fams.columns_within) {
      within[std::to_string(int(b.first)) + "," + std::to_string(int(b.second))] =
          positions;
    }
    emit(opt, io::json{{"perm_linked_pairs", pairs20},
                       {"equal_pairs", pairs2id},
                       {"anchored_pairs", pairs21},
                       {"small_columns", fams.small_columns},
                       {"columns_within", within}});
  });
  auto* d_sep = decomp->add_subcommand("separate", "weak and strong separation");
  d_sep->add_option("--qset", opt.qset_path)->required();
  d_sep->add_option("--p", opt.p)->required();
  d_sep->add_option("--q", opt.q)->required();
  d_sep->add_option("--a", opt.a)->required();
  d_sep->callback([&] {
    const auto h = load_qset(opt.qset_path);
    const auto weak =
        weakly_separates(h, opt.p, opt.q, static_cast<Value>(opt.a));
    const bool strong =
        strongly_separates(h, opt.p, opt.q, static_cast<Value>(opt.a));
    io::json j{{"weak", weak.has_value()}, {"strong", strong}};
    if (weak) {
      j["witness_rows"] = {static_cast<int>(weak->row1),
                           static_cast<int>(weak->row2)};
    }
    std::cout << j.dump(2) << "\n";
  });

  // delta: the three richness conditions.
  auto* delta = app.add_subcommand("delta", "richness conditions");
  auto* del_s = delta->add_subcommand("s", "slot condition");
  del_s->add_option("--gens", opt.gens_path)->required();
  del_s->add_option("--n", opt.n)->required();
  del_s->add_option("--cap", opt.cap);
  del_s->add_option("--out", opt.out_path);
  del_s->callback([&] {
    const auto report = delta_s(load_gens(opt.gens_path), opt.n, opt.cap);
    emit(opt, io::to_json(report));
    exit_code = report.holds ? 0 : 1;
  });
  auto* del_p = delta->add_subcommand("partial", "majority-pattern condition");
  del_p->add_option("--gens", opt.gens_path)->required();
  del_p->add_option("--cap", opt.cap);
  del_p->add_option("--out", opt.out_path);
  del_p->callback([&] {
    const auto report = delta_partial(load_gens(opt.gens_path), opt.cap);
    emit(opt, io::to_json(report));
    exit_code = report.holds ? 0 : 1;
  });
  auto* del_2 = delta->add_subcommand("two", "idempotent-pair condition");
  del_2->add_option("--gens", opt.gens_path)->required();
  del_2->add_option("--cap", opt.cap);
  del_2->add_option("--out", opt.out_path);
  del_2->callback([&] {
    const auto report = delta_2(load_gens(opt.gens_path), opt.cap);
    emit(opt, io::to_json(report));
    exit_code = report.holds ? 0 : 1;
  });

  // post: Boolean class identification and restriction families.
  auto* post = app.add_subcommand("post", "Boolean class identification");
  auto* p_id = post->add_subcommand("identify", "identify a Boolean clone");
  p_id->add_option("--in", opt.in_path)->required();
  p_id->add_option("--bound", opt.bound);
  p_id->add_option("--out", opt.out_path);
  p_id->callback([&] {
    const auto set = io::function_set_from_json(io::read_json_file(opt.in_path));
    emit(opt, io::to_json(identify_post_class(set, opt.bound)));
  });
  auto* p_sem = post->add_subcommand("semantic", "semantic slice of a class");
  p_sem->add_option("--class", opt.class_name)->required();
  p_sem->add_option("--max-arity", opt.arity);
  p_sem->add_option("--out", opt.out_path);
  p_sem->callback([&] {
    const auto tag = post_tag_from_string(opt.class_name);
    if (!tag || *tag == PostTag::Other) {
      throw std::invalid_argument("need one of O1 D1 D2 L4 A4 C4");
    }
    emit(opt, io::to_json(semantic_slice(*tag, opt.arity == 2 ? 3 : opt.arity)));
  });
  auto* p_dual = post->add_subcommand("dualize", "the duality map");
  p_dual->add_option("--in", opt.in_path)->required();
  p_dual->add_option("--out", opt.out_path);
  p_dual->callback([&] {
    emit(opt, io::to_json(
                  dualize(io::function_from_json(io::read_json_file(opt.in_path)))));
  });
  auto* p_pi = post->add_subcommand("pi", "per-pair restriction classes");
  p_pi->add_option("--gens", opt.gens_path)->required();
  p_pi->add_option("--bound", opt.bound);
  p_pi->add_option("--out", opt.out_path);
  p_pi->callback([&] {
    emit(opt, io::to_json(pi_family(load_gens(opt.gens_path), opt.bound)));
  });

  // chi: characteristics.
  auto* chi = app.add_subcommand("chi", "bounded characteristics");
  chi->add_option("--gens", opt.gens_path);
  chi->add_option("--bound", opt.bound);
  chi->add_option("--out", opt.out_path);
  chi->callback([&] {
    if (chi->get_subcommands().empty()) {
      if (opt.gens_path.empty()) {
        throw std::invalid_argument("chi needs --gens (or a subcommand)");
      }
      emit(opt, io::to_json(characteristic(load_gens(opt.gens_path), opt.bound)));
    }
  });
  auto* chi_cmp = chi->add_subcommand("compare", "bounded equality");
  chi_cmp->add_option("--left", opt.left_path)->required();
  chi_cmp->add_option("--right", opt.right_path)->required();
  chi_cmp->add_option("--bound", opt.bound);
  chi_cmp->callback([&] {
    const bool equal = chi_equal(
        characteristic(load_gens(opt.left_path), opt.bound),
        characteristic(load_gens(opt.right_path), opt.bound));
    std::cout << (equal ? "equal" : "different") << "\n";
    exit_code = equal ? 0 : 1;
  });
  auto* chi_case = chi->add_subcommand("classify", "structural case tag");
  chi_case->add_option("--gens", opt.gens_path)->required();
  chi_case->add_option("--bound", opt.bound);
  chi_case->callback([&] {
    std::cout << classify_case(characteristic(load_gens(opt.gens_path), opt.bound))
              << "\n";
  });

  // verify: the cross-check suites.
  auto* verify = app.add_subcommand("verify", "verification suites");
  auto* v_thm = verify->add_subcommand("theorem", "a decomposition law");
  v_thm->add_option("--which", opt.which)->required()
      ->check(CLI::IsMember({"partial", "s3", "d2"}));
  v_thm->add_option("--gens", opt.gens_path)->required();
  v_thm->add_option("--m", opt.m)->required();
  v_thm->add_flag("--exhaustive", opt.exhaustive);
  v_thm->add_option("--samples", opt.samples);
  v_thm->add_option("--seed", opt.seed);
  v_thm->add_option("--out", opt.out_path);
  v_thm->callback([&] {
    const TheoremKind which = opt.which == "partial" ? TheoremKind::Partial
                              : opt.which == "s3"    ? TheoremKind::S3
                                                     : TheoremKind::D2;
    const auto report = verify_decomposition_theorem(
        which, load_gens(opt.gens_path), opt.m, parse_mode(opt));
    emit(opt, io::to_json(report));
    exit_code = exit_for(report);
  });
  auto* v_main = verify->add_subcommand("main", "the classification law");
  v_main->add_option("--entry", opt.entry_name)->required();
  v_main->add_option("--k", opt.k)->required();
  v_main->add_option("--m", opt.m)->required();
  v_main->add_flag("--exhaustive", opt.exhaustive);
  v_main->add_option("--samples", opt.samples);
  v_main->add_option("--seed", opt.seed);
  v_main->add_option("--out", opt.out_path);
  v_main->callback([&] {
    const auto catalog = builtin_catalog(opt.k);
    const auto report = verify_main(catalog_entry(catalog, opt.entry_name),
                                    opt.m, parse_mode(opt));
    emit(opt, io::to_json(report));
    exit_code = exit_for(report);
  });
  auto* v_lem = verify->add_subcommand("lemmas", "the property suites");
  v_lem->add_option("--k", opt.k)->required();
  v_lem->add_option("--seed", opt.seed)->required();
  v_lem->add_option("--samples", opt.samples)->required();
  v_lem->add_option("--out", opt.out_path);
  v_lem->callback([&] {
    const auto catalog = builtin_catalog(opt.k);
    io::json out = io::json::array();
    bool all_passed = true;
    for (const auto& report :
         verify_lemma_suite(catalog, opt.seed, static_cast<int>(opt.samples))) {
      out.push_back(io::to_json(report));
      all_passed = all_passed &&
                   (report.passed() || report.status != VerifyStatus::Failed);
    }
    emit(opt, out);
    exit_code = all_passed ? 0 : 1;
  });
  auto* v_chi = verify->add_subcommand("chi-injectivity", "catalog injectivity");
  v_chi->add_option("--k", opt.k)->required();
  v_chi->add_option("--bound", opt.bound);
  v_chi->add_option("--out", opt.out_path);
  v_chi->callback([&] {
    const auto report = chi_injectivity_check(builtin_catalog(opt.k), opt.bound);
    emit(opt, io::to_json(report));
    exit_code = exit_for(report);
  });

  // catalog: write the built-in generator sets.
  auto* cat = app.add_subcommand("catalog", "write the built-in clone catalog");
  cat->add_option("--k", opt.k)->required();
  cat->add_option("--out-dir", opt.out_dir);
  cat->callback([&] {
    const auto entries = builtin_catalog(opt.k);
    io::json listing = io::json::array();
    for (const auto& entry : entries) {
      io::json row{{"name", entry.name},
                   {"expected_case", entry.expected_case},
                   {"generators", entry.gens.size()}};
      listing.push_back(row);
      if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        // Short file names for the well-known entries.
        std::string stem = entry.name;
        if (stem == "uv-symmetric") stem = "uv";
        io::write_json_file(std::filesystem::path(opt.out_dir) / (stem + ".json"),
                            io::generators_to_json(entry.gens));
      }
    }
    std::cout << listing.dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
