#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "litecanon/train.hpp"
#include "oracles_neuro.hpp"

using namespace litecanon;
using namespace litecanon::neuro;

namespace {

EmbeddingTable tiny_table() {
  EmbeddingTable t(3);
  t.insert("port", (Eigen::VectorXd(3) << 0.1, 0.2, 0.3).finished());
  t.insert("meadow", (Eigen::VectorXd(3) << -0.4, 0.5, 0.0).finished());
  t.insert("passes", (Eigen::VectorXd(3) << 0.2, -0.1, 0.6).finished());
  t.insert("thames", (Eigen::VectorXd(3) << 0.7, 0.1, -0.2).finished());
  return t;
}

EmbeddingTable random_table(int dim, const std::vector<std::string>& words,
                            uint64_t seed) {
  EmbeddingTable t(dim);
  Rng rng(seed);
  for (const std::string& w : words) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.uniform(-0.5, 0.5);
    t.insert(w, v);
  }
  return t;
}

}  // namespace

TEST_CASE("load_embeddings: header, dims, duplicates, errors") {
  std::istringstream ok("2 3\nfoo 1 2 3\nbar 0.5 -0.5 0.25\nfoo 9 9 9\n");
  EmbeddingTable t = EmbeddingTable::load(ok);
  CHECK(t.dim() == 3);
  CHECK(t.size() == 2);
  CHECK(t.lookup("foo")[0] == doctest::Approx(9.0));  // last wins

  std::istringstream no_header("foo 1 2 3\nbar 4 5 6\n");
  CHECK(EmbeddingTable::load(no_header).dim() == 3);

  std::istringstream ragged("foo 1 2 3\nbar 4 5\n");
  try {
    EmbeddingTable::load(ragged);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("oov lookup is a deterministic unit vector, distinct per word") {
  EmbeddingTable t = tiny_table();
  Eigen::VectorXd a = t.lookup("absentword");
  Eigen::VectorXd b = t.lookup("absentword");
  Eigen::VectorXd c = t.lookup("otherabsent");
  CHECK(a == b);
  CHECK(a.norm() == doctest::Approx(1.0));
  CHECK((a - c).norm() > 1e-6);
}

TEST_CASE("encode_sequence: padding, truncation, exact assembly") {
  EmbeddingTable t = tiny_table();
  SeqSpec spec{2, 1, 2};

  SUBCASE("all-empty texts give all zero columns") {
    Eigen::MatrixXd xs = encode_sequence("", "", "", spec, t);
    CHECK(xs.cols() == 5);
    CHECK(xs.norm() == doctest::Approx(0.0));
  }
  SUBCASE("over-budget literal keeps leftmost tokens") {
    // budget 2, four tokens: the last two drop
    Eigen::MatrixXd xs =
        encode_sequence("", "", "port meadow thames passes", spec, t);
    CHECK(xs.col(3) == t.lookup("port"));
    CHECK(xs.col(4) == t.lookup("meadow"));
  }
  SUBCASE("manual assembly") {
    Eigen::MatrixXd xs = encode_sequence("thames", "passes", "port meadow", spec, t);
    CHECK(xs.col(0) == t.lookup("thames"));
    CHECK(xs.col(1).norm() == doctest::Approx(0.0));  // null pad
    CHECK(xs.col(2) == t.lookup("passes"));
    CHECK(xs.col(3) == t.lookup("port"));
    CHECK(xs.col(4) == t.lookup("meadow"));
  }
}

TEST_CASE("gru_step: zero-parameter algebra") {
  GruParams p = GruParams::zeros(3, 2);
  Eigen::VectorXd x = (Eigen::VectorXd(2) << 0.5, -0.5).finished();

  // z = 0.5, candidate = 0, so h stays 0 from 0 and halves otherwise
  CHECK(gru_step(x, Eigen::VectorXd::Zero(3), p).norm() == doctest::Approx(0.0));
  Eigen::VectorXd v = (Eigen::VectorXd(3) << 0.4, -0.8, 0.2).finished();
  CHECK((gru_step(x, v, p) - 0.5 * v).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(gru_step(Eigen::VectorXd::Zero(5), v, p), Error);
}

TEST_CASE("gru_step: scalar case matches the frozen independent evaluation") {
  GruParams p = GruParams::zeros(1, 1);
  p.w_h(0, 0) = 0.3;  p.u_h(0, 0) = -0.2; p.b_h(0) = 0.1;
  p.w_z(0, 0) = 0.5;  p.u_z(0, 0) = 0.4;  p.b_z(0) = -0.1;
  p.w_r(0, 0) = -0.3; p.u_r(0, 0) = 0.2;  p.b_r(0) = 0.05;
  Eigen::VectorXd x(1), h(1);
  x << 0.7;
  h << -0.4;
  double got = gru_step(x, h, p)(0);
  // frozen from a 30-digit independent evaluation of the update equations
  CHECK(std::fabs(got - (-0.017472042626247925793)) < 1e-10);

  // and against an inline scalar re-evaluation
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  double r = sig(-0.3 * 0.7 + 0.2 * -0.4 + 0.05);
  double z = sig(0.5 * 0.7 + 0.4 * -0.4 - 0.1);
  double c = std::tanh(0.3 * 0.7 + r * (-0.2 * -0.4) + 0.1);
  double expected = (1 - z) * -0.4 + z * c;
  CHECK(std::fabs(got - expected) < 1e-15);
}

TEST_CASE("birnn_encode: single step, palindrome symmetry, unrolled oracle") {
  Rng rng(3);
  int d_w = 2, d_r = 3;
  ClassifierModel shell = ClassifierModel::make_att_birnn("c", {1, 1, 1}, d_w, d_r, 2);
  shell.init_weights(11);
  GruParams fwd = shell.fwd;
  GruParams bwd = shell.bwd;

  SUBCASE("T=1: both halves are single steps from zero") {
    Eigen::MatrixXd xs(d_w, 1);
    xs << 0.3, -0.6;
    Eigen::MatrixXd hs = birnn_encode(xs, fwd, bwd);
    CHECK((hs.col(0).head(d_r) -
           gru_step(xs.col(0), Eigen::VectorXd::Zero(d_r), fwd))
              .norm() == doctest::Approx(0.0));
    CHECK((hs.col(0).tail(d_r) -
           gru_step(xs.col(0), Eigen::VectorXd::Zero(d_r), bwd))
              .norm() == doctest::Approx(0.0));
  }
  SUBCASE("palindrome with shared params mirrors the states") {
    Eigen::MatrixXd xs(d_w, 3);
    xs.col(0) << 0.2, -0.1;
    xs.col(1) << 0.9, 0.4;
    xs.col(2) = xs.col(0);
    Eigen::MatrixXd hs = birnn_encode(xs, fwd, fwd);
    for (int t = 0; t < 3; ++t)
      CHECK((hs.col(t).head(d_r) - hs.col(2 - t).tail(d_r)).norm() ==
            doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("T=3 equals a per-step unroll") {
    Eigen::MatrixXd xs(d_w, 3);
    for (int t = 0; t < 3; ++t)
      for (int i = 0; i < d_w; ++i) xs(i, t) = rng.uniform(-1, 1);
    Eigen::MatrixXd hs = birnn_encode(xs, fwd, bwd);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(d_r);
    for (int t = 0; t < 3; ++t) {
      h = gru_step(xs.col(t), h, fwd);
      CHECK((hs.col(t).head(d_r) - h).norm() == doctest::Approx(0.0));
    }
    h.setZero();
    for (int t = 2; t >= 0; --t) {
      h = gru_step(xs.col(t), h, bwd);
      CHECK((hs.col(t).tail(d_r) - h).norm() == doctest::Approx(0.0));
    }
  }
  SUBCASE("hidden states stay strictly inside (-1, 1)") {
    Eigen::MatrixXd xs(d_w, 6);
    for (int t = 0; t < 6; ++t)
      for (int i = 0; i < d_w; ++i) xs(i, t) = rng.uniform(-3, 3);
    Eigen::MatrixXd hs = birnn_encode(xs, fwd, bwd);
    CHECK(hs.array().abs().maxCoeff() < 1.0);
  }
}

TEST_CASE("attention: uniform weights, T=1, softmax oracle") {
  SUBCASE("zero parameters give uniform alpha") {
    AttentionParams p = AttentionParams::zeros(2, 3);
    Eigen::MatrixXd hs = Eigen::MatrixXd::Random(6, 4);
    AttentionOutput out = attention(hs, p);
    for (int t = 0; t < 4; ++t)
      CHECK(out.alpha[t] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("T=1 forces alpha=1") {
    AttentionParams p = AttentionParams::zeros(2, 3);
    p.u_w << 0.3, -0.4;
    Eigen::MatrixXd hs = Eigen::MatrixXd::Random(6, 1);
    CHECK(attention(hs, p).alpha[0] == doctest::Approx(1.0));
  }
  SUBCASE("random T=4 equals an explicit softmax oracle") {
    Rng rng(5);
    int d_r = 3, d_a = 2, T = 4;
    ClassifierModel shell = ClassifierModel::make_att_birnn("c", {2, 1, 1}, 2, d_r, d_a);
    shell.init_weights(21);
    Eigen::MatrixXd hs(2 * d_r, T);
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < 2 * d_r; ++i) hs(i, t) = rng.uniform(-1, 1);
    AttentionOutput out = attention(hs, shell.att);

    std::vector<double> e(T);
    double sum = 0;
    for (int t = 0; t < T; ++t) {
      Eigen::VectorXd u =
          ((shell.att.w_w * hs.col(t) + shell.att.b_w).array().tanh()).matrix();
      e[t] = std::exp(u.dot(shell.att.u_w));
      sum += e[t];
    }
    double alpha_sum = 0;
    for (int t = 0; t < T; ++t) {
      CHECK(out.alpha[t] == doctest::Approx(e[t] / sum).epsilon(1e-10));
      CHECK(out.alpha[t] >= 0.0);
      alpha_sum += out.alpha[t];
    }
    CHECK(std::fabs(alpha_sum - 1.0) < 1e-9);
    // h_a concatenates alpha_t * u_t position by position
    Eigen::VectorXd u0 =
        ((shell.att.w_w * hs.col(0) + shell.att.b_w).array().tanh()).matrix();
    CHECK((out.h_a.head(d_a) - out.alpha[0] * u0).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("forward: sigma(0)=0.5, monotone in the bias, composed oracle") {
  EmbeddingTable t = tiny_table();
  ClassifierModel m = ClassifierModel::make_att_birnn("c", {2, 1, 2}, 3, 2, 2);

  SUBCASE("all-zero parameters score 0.5") {
    ForwardOutput out = forward(m, "thames", "passes", "port meadow", t);
    CHECK(out.score == doctest::Approx(0.5));
    CHECK(out.alpha.size() == 5);
  }
  SUBCASE("score is monotone in b_f and saturates to 1") {
    m.init_weights(3);
    double prev = 0.0;
    for (double b : {-4.0, 0.0, 4.0, 40.0}) {
      m.b_f = b;
      double y = forward(m, "thames", "passes", "port meadow", t).score;
      CHECK(y > prev);
      CHECK(y >= 0.0);
      CHECK(y <= 1.0);
      prev = y;
    }
    CHECK(prev == doctest::Approx(1.0));
  }
  SUBCASE("tiny model equals the composed oracle") {
    m.init_weights(17);
    Eigen::MatrixXd xs = encode_sequence("thames", "passes", "port meadow",
                                          m.seq, t);
    Eigen::MatrixXd hs = birnn_encode(xs, m.fwd, m.bwd);
    AttentionOutput att_out = attention(hs, m.att);
    double expected =
        1.0 / (1.0 + std::exp(-(m.w_f.dot(att_out.h_a) + m.b_f)));
    CHECK(forward(m, "thames", "passes", "port meadow", t).score ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("mlp_forward: zero params, hand weights, determinism") {
  EmbeddingTable t(1);
  t.insert("a", (Eigen::VectorXd(1) << 0.4).finished());
  t.insert("b", (Eigen::VectorXd(1) << -0.6).finished());
  t.insert("c", (Eigen::VectorXd(1) << 0.9).finished());
  ClassifierModel m = ClassifierModel::make_mlp("c", {1, 1, 1}, 1, 1);

  CHECK(mlp_forward(m, "a", "b", "c", t) == doctest::Approx(0.5));

  m.mlp.w1 << 0.5, -0.3, 0.2;
  m.mlp.b1 << 0.1;
  m.w_f << 0.7;
  m.b_f = -0.2;
  // frozen hand computation: sigma(0.7 * tanh(0.66) - 0.2)
  CHECK(mlp_forward(m, "a", "b", "c", t) ==
        doctest::Approx(0.55103524611542971662).epsilon(1e-12));
  CHECK(mlp_forward(m, "a", "b", "c", t) ==
        doctest::Approx(mlp_forward(m, "a", "b", "c", t)));
}

TEST_CASE("bce_loss fixtures") {
  CHECK(bce_loss(0.5, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(bce_loss(0.5, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // label-consistent extreme clamps to -ln(1 - eps)
  CHECK(bce_loss(1.0, 1.0) == doctest::Approx(-std::log(1.0 - 1e-7)));
  CHECK(bce_loss(0.0, 0.0) == doctest::Approx(-std::log(1.0 - 1e-7)));
  CHECK(bce_loss(1e-30, 1.0) == doctest::Approx(-std::log(1e-7)));
}

TEST_CASE("batch mean equals the per-sample mean oracle") {
  EmbeddingTable t = tiny_table();
  ClassifierModel m = ClassifierModel::make_att_birnn("c", {1, 1, 2}, 3, 2, 2);
  m.init_weights(9);
  std::vector<TrainingSample> samples = {
      {"thames", "passes", "port meadow", 1.0},
      {"port", "passes", "thames", 0.0},
      {"meadow", "passes", "port", 1.0},
  };
  std::vector<EncodedSample> encoded;
  double sum = 0.0;
  for (const auto& s : samples) {
    encoded.push_back(encode_sample(s, m.seq, t));
    double y = forward(m, s.subject_text, s.property_text, s.literal_text, t).score;
    sum += bce_loss(y, s.label);
  }
  CHECK(batch_loss(m, encoded) == doctest::Approx(sum / 3.0).epsilon(1e-12));
}

TEST_CASE("gradients: zero-parameter balanced batch zeroes the fc bias") {
  EmbeddingTable t = tiny_table();
  ClassifierModel m = ClassifierModel::make_att_birnn("c", {1, 1, 1}, 3, 2, 2);
  std::vector<TrainingSample> batch = {{"port", "passes", "meadow", 1.0},
                                       {"meadow", "passes", "port", 0.0}};
  ClassifierModel g = gradients(m, batch, t);
  CHECK(g.b_f == doctest::Approx(0.0));
}

TEST_CASE("gradients: duplicated sample equals the single-sample gradient") {
  EmbeddingTable t = tiny_table();
  ClassifierModel m = ClassifierModel::make_att_birnn("c", {1, 1, 2}, 3, 2, 2);
  m.init_weights(13);
  std::vector<TrainingSample> one = {{"thames", "passes", "port meadow", 1.0}};
  std::vector<TrainingSample> dup = {one[0], one[0], one[0]};
  ClassifierModel g1 = gradients(m, one, t);
  ClassifierModel g3 = gradients(m, dup, t);
  auto t1 = g1.tensors();
  auto t3 = g3.tensors();
  for (size_t k = 0; k < t1.size(); ++k)
    for (size_t i = 0; i < t1[k].size; ++i)
      CHECK(t1[k].data[i] == doctest::Approx(t3[k].data[i]).epsilon(1e-12));
}

TEST_CASE("gradients match central finite differences (small AttBiRNN)") {
  std::vector<std::string> words = {"wa", "wb", "wc", "wd", "we", "wf"};
  EmbeddingTable t = random_table(3, words, 31);
  ClassifierModel m = ClassifierModel::make_att_birnn("c", {2, 1, 2}, 3, 3, 2);
  // gradients through the reset gate shrink with the cube of the weight
  // scale; initialize wide enough that the relative FD metric is meaningful
  m.init_weights(41, 0.6);
  std::vector<TrainingSample> batch = {{"wa wb", "wc", "wd we", 1.0},
                                       {"wb", "wc", "wf", 0.0},
                                       {"we wd", "wc", "wa", 1.0}};
  std::vector<EncodedSample> encoded;
  for (const auto& s : batch) encoded.push_back(encode_sample(s, m.seq, t));
  testutil::FdReport report = testutil::finite_difference_check(m, encoded);
  INFO("worst tensor ", report.worst_tensor, " rel ", report.worst_rel);
  CHECK(report.ok);
}

TEST_CASE("gradients match central finite differences (MLP)") {
  std::vector<std::string> words = {"wa", "wb", "wc"};
  EmbeddingTable t = random_table(2, words, 32);
  ClassifierModel m = ClassifierModel::make_mlp("c", {1, 1, 2}, 2, 4);
  m.init_weights(42, 0.6);
  std::vector<TrainingSample> batch = {{"wa", "wb", "wc wa", 1.0},
                                       {"wb", "wa", "wc", 0.0}};
  std::vector<EncodedSample> encoded;
  for (const auto& s : batch) encoded.push_back(encode_sample(s, m.seq, t));
  testutil::FdReport report = testutil::finite_difference_check(m, encoded);
  INFO("worst tensor ", report.worst_tensor, " rel ", report.worst_rel);
  CHECK(report.ok);
}

TEST_CASE("adam_step: zero gradient, first-step magnitude, scalar recurrence") {
  TrainConfig cfg;
  cfg.learning_rate = 0.01;

  SUBCASE("zero gradient leaves parameters unchanged from fresh state") {
    ClassifierModel m = ClassifierModel::make_mlp("c", {1, 1, 1}, 1, 1);
    m.init_weights(5);
    ClassifierModel before = m;
    AdamState state(m);
    adam_step(m, m.zeros_like(), state, cfg);
    auto a = m.tensors();
    auto b = before.tensors();
    for (size_t k = 0; k < a.size(); ++k)
      for (size_t i = 0; i < a[k].size; ++i)
        CHECK(a[k].data[i] == doctest::Approx(b[k].data[i]));
  }
  SUBCASE("first step moves by ~lr*sign(g)") {
    ClassifierModel m = ClassifierModel::make_mlp("c", {1, 1, 1}, 1, 1);
    AdamState state(m);
    ClassifierModel g = m.zeros_like();
    g.b_f = 0.5;
    adam_step(m, g, state, cfg);
    CHECK(m.b_f == doctest::Approx(-cfg.learning_rate).epsilon(1e-6));
  }
  SUBCASE("three scalar steps match the frozen recurrence") {
    ClassifierModel m = ClassifierModel::make_mlp("c", {1, 1, 1}, 1, 1);
    m.b_f = 1.0;
    AdamState state(m);
    double gs[3] = {0.5, -0.2, 0.1};
    double expected[3] = {0.990000000199999996, 0.98654394181165105854,
                          0.98275002408356954162};
    for (int i = 0; i < 3; ++i) {
      ClassifierModel g = m.zeros_like();
      g.b_f = gs[i];
      adam_step(m, g, state, cfg);
      CHECK(m.b_f == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("training loss does not increase over the first small-lr step") {
  std::vector<std::string> words = {"wa", "wb", "wc", "wd"};
  EmbeddingTable t = random_table(3, words, 77);
  ClassifierModel m = ClassifierModel::make_att_birnn("c", {1, 1, 2}, 3, 3, 2);
  m.init_weights(78);
  std::vector<TrainingSample> batch = {{"wa", "wb", "wc wd", 1.0},
                                       {"wd", "wb", "wa", 0.0}};
  std::vector<EncodedSample> encoded;
  for (const auto& s : batch) encoded.push_back(encode_sample(s, m.seq, t));
  TrainConfig cfg;
  cfg.learning_rate = 1e-4;
  AdamState state(m);
  double before = batch_loss(m, encoded);
  adam_step(m, gradients(m, encoded), state, cfg);
  CHECK(batch_loss(m, encoded) <= before);
}

TEST_CASE("train_classifier: skip rule, determinism, separable task") {
  // two disjoint vocabularies
  std::vector<std::string> words;
  for (int i = 0; i < 8; ++i) words.push_back("pos" + std::to_string(i));
  for (int i = 0; i < 8; ++i) words.push_back("neg" + std::to_string(i));
  words.push_back("subj");
  words.push_back("prop");
  EmbeddingTable table = random_table(8, words, 123);

  std::vector<TrainingSample> general, particular;
  Rng rng(9);
  for (int i = 0; i < 40; ++i) {
    std::string a = "pos" + std::to_string(rng.uniform_index(8));
    std::string b = "pos" + std::to_string(rng.uniform_index(8));
    general.push_back({"subj", "prop", a + " " + b, 1.0});
    std::string c = "neg" + std::to_string(rng.uniform_index(8));
    std::string d = "neg" + std::to_string(rng.uniform_index(8));
    general.push_back({"subj", "prop", c + " " + d, 0.0});
  }
  TrainConfig cfg;
  cfg.epochs_pretrain = 25;
  cfg.epochs_finetune = 4;
  cfg.batch_size = 16;
  cfg.learning_rate = 1e-2;
  cfg.seed = 99;
  NetSpec net;
  net.seq = {2, 1, 3};
  net.d_r = 8;
  net.d_a = 4;

  CHECK_THROWS_AS(train_classifier("c", {}, {}, cfg, net, table), Error);

  ClassifierModel m1 = train_classifier("c", general, particular, cfg, net, table);

  SUBCASE("empty particular set equals pre-trained-only model") {
    TrainConfig no_ft = cfg;
    no_ft.epochs_finetune = 0;
    ClassifierModel m2 =
        train_classifier("c", general, particular, no_ft, net, table);
    std::ostringstream b1, b2;
    save_model(m1, b1);
    save_model(m2, b2);
    CHECK(b1.str() == b2.str());
  }
  SUBCASE("fixed seed gives bit-identical serialized models") {
    ClassifierModel m2 = train_classifier("c", general, particular, cfg, net, table);
    std::ostringstream b1, b2;
    save_model(m1, b1);
    save_model(m2, b2);
    CHECK(b1.str() == b2.str());
  }
  SUBCASE("training accuracy on the separable set is >= 0.99") {
    size_t correct = 0;
    for (const auto& s : general) {
      double y = forward(m1, s.subject_text, s.property_text, s.literal_text,
                         table)
                     .score;
      if ((y >= 0.5) == (s.label >= 0.5)) ++correct;
    }
    CHECK(static_cast<double>(correct) / general.size() >= 0.99);
  }
}

TEST_CASE("save/load: round trip, truncation, parameter count formula") {
  std::vector<std::string> words = {"wa", "wb", "wc"};
  EmbeddingTable t = random_table(6, words, 55);
  ClassifierModel m = ClassifierModel::make_att_birnn(
      "http://t/C", {4, 2, 4}, 6, 8, 4);
  m.init_weights(66);

  std::ostringstream buf;
  save_model(m, buf);
  std::istringstream in(buf.str());
  ClassifierModel loaded = load_model(in);
  CHECK(loaded.class_iri == m.class_iri);

  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    std::string l = words[rng.uniform_index(3)] + " " + words[rng.uniform_index(3)];
    CHECK(forward(m, "wa", "wb", l, t).score ==
          doctest::Approx(forward(loaded, "wa", "wb", l, t).score)
              .epsilon(1e-15));
  }

  SUBCASE("truncated stream errors out") {
    std::string bytes = buf.str();
    std::istringstream cut(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_model(cut), Error);
    std::istringstream garbage("nope");
    CHECK_THROWS_AS(load_model(garbage), Error);
  }
  SUBCASE("parameter count equals the analytic formula") {
    int d_w = 6, d_r = 8, d_a = 4, T = 10;
    size_t gru = 3 * (d_r * d_w + d_r * d_r + d_r);
    size_t att = d_a * 2 * d_r + d_a + d_a;
    size_t fc = T * d_a + 1;
    CHECK(m.parameter_count() == 2 * gru + att + fc);
    // serialized payload carries exactly that many doubles
    size_t doubles = 0;
    auto tensors = m.tensors();
    for (const auto& tr : tensors) doubles += tr.size;
    CHECK(doubles == m.parameter_count());
  }
}
