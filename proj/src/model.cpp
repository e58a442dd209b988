// Copyright 2026 The LiteCanon Authors
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

#include "litecanon/model.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "litecanon/kb.hpp"
#include "litecanon/lex_index.hpp"
#include "litecanon/rng.hpp"

namespace litecanon {
namespace neuro {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Eigen::ArrayXd sigmoid(const Eigen::ArrayXd& x) {
  return 1.0 / (1.0 + (-x).exp());
}

}  // namespace

GruParams GruParams::zeros(int hidden, int input) {
  GruParams p;
  p.w_h = Eigen::MatrixXd::Zero(hidden, input);
  p.u_h = Eigen::MatrixXd::Zero(hidden, hidden);
  p.b_h = Eigen::VectorXd::Zero(hidden);
  p.w_z = Eigen::MatrixXd::Zero(hidden, input);
  p.u_z = Eigen::MatrixXd::Zero(hidden, hidden);
  p.b_z = Eigen::VectorXd::Zero(hidden);
  p.w_r = Eigen::MatrixXd::Zero(hidden, input);
  p.u_r = Eigen::MatrixXd::Zero(hidden, hidden);
  p.b_r = Eigen::VectorXd::Zero(hidden);
  return p;
}

AttentionParams AttentionParams::zeros(int d_a, int d_r) {
  AttentionParams p;
  p.w_w = Eigen::MatrixXd::Zero(d_a, 2 * d_r);
  p.b_w = Eigen::VectorXd::Zero(d_a);
  p.u_w = Eigen::VectorXd::Zero(d_a);
  return p;
}

MlpParams MlpParams::zeros(int hidden, int input) {
  MlpParams p;
  p.w1 = Eigen::MatrixXd::Zero(hidden, input);
  p.b1 = Eigen::VectorXd::Zero(hidden);
  return p;
}

ClassifierModel ClassifierModel::make_att_birnn(const std::string& class_iri,
                                                SeqSpec seq, int d_w, int d_r,
                                                int d_a) {
  ClassifierModel m;
  m.class_iri = class_iri;
  m.kind = EncoderKind::att_birnn;
  m.seq = seq;
  m.dim_word = d_w;
  m.dim_hidden = d_r;
  m.dim_att = d_a;
  m.fwd = GruParams::zeros(d_r, d_w);
  m.bwd = GruParams::zeros(d_r, d_w);
  m.att = AttentionParams::zeros(d_a, d_r);
  m.w_f = Eigen::RowVectorXd::Zero(seq.total() * d_a);
  m.b_f = 0.0;
  return m;
}

ClassifierModel ClassifierModel::make_mlp(const std::string& class_iri,
                                          SeqSpec seq, int d_w, int hidden) {
  ClassifierModel m;
  m.class_iri = class_iri;
  m.kind = EncoderKind::mlp;
  m.seq = seq;
  m.dim_word = d_w;
  m.dim_hidden = hidden;
  m.dim_att = 0;
  m.mlp = MlpParams::zeros(hidden, seq.total() * d_w);
  m.w_f = Eigen::RowVectorXd::Zero(hidden);
  m.b_f = 0.0;
  return m;
}

ClassifierModel ClassifierModel::zeros_like() const {
  ClassifierModel m = *this;
  for (auto& t : m.tensors()) std::memset(t.data, 0, t.size * sizeof(double));
  return m;
}

void ClassifierModel::init_weights(uint64_t seed, double scale) {
  Rng rng(seed);
  for (auto& t : tensors()) {
    size_t dot = t.name.find_last_of('.');
    bool is_bias = t.name[dot == std::string::npos ? 0 : dot + 1] == 'b';
    for (size_t i = 0; i < t.size; ++i)
      t.data[i] = is_bias ? 0.0 : rng.uniform(-scale, scale);
  }
}

size_t ClassifierModel::parameter_count() const {
  size_t n = 0;
  for (const auto& t : tensors()) n += t.size;
  return n;
}

std::vector<ClassifierModel::TensorRef> ClassifierModel::tensors() {
  std::vector<TensorRef> out;
  auto add = [&](const std::string& name, Eigen::MatrixXd& m) {
    out.push_back({name, m.data(), static_cast<size_t>(m.size())});
  };
  auto addv = [&](const std::string& name, Eigen::VectorXd& v) {
    out.push_back({name, v.data(), static_cast<size_t>(v.size())});
  };
  if (kind == EncoderKind::att_birnn) {
    for (auto [prefix, gru] : {std::pair{"fwd.", &fwd}, std::pair{"bwd.", &bwd}}) {
      std::string pre = prefix;
      add(pre + "w_h", gru->w_h);
      add(pre + "u_h", gru->u_h);
      addv(pre + "b_h", gru->b_h);
      add(pre + "w_z", gru->w_z);
      add(pre + "u_z", gru->u_z);
      addv(pre + "b_z", gru->b_z);
      add(pre + "w_r", gru->w_r);
      add(pre + "u_r", gru->u_r);
      addv(pre + "b_r", gru->b_r);
    }
    add("att.w_w", att.w_w);
    addv("att.b_w", att.b_w);
    addv("att.u_w", att.u_w);
  } else {
    add("mlp.w1", mlp.w1);
    addv("mlp.b1", mlp.b1);
  }
  out.push_back({"w_f", w_f.data(), static_cast<size_t>(w_f.size())});
  out.push_back({"b_f", &b_f, 1});
  return out;
}

std::vector<ClassifierModel::ConstTensorRef> ClassifierModel::tensors() const {
  std::vector<ConstTensorRef> out;
  for (const auto& t : const_cast<ClassifierModel*>(this)->tensors())
    out.push_back({t.name, t.data, t.size});
  return out;
}

std::string encoder_kind_str(EncoderKind k) {
  return k == EncoderKind::att_birnn ? "attbirnn" : "mlp";
}

Eigen::MatrixXd encode_sequence(const std::string& s_text,
                                const std::string& p_text,
                                const std::string& l_text, const SeqSpec& spec,
                                const EmbeddingTable& table) {
  Eigen::MatrixXd xs = Eigen::MatrixXd::Zero(table.dim(), spec.total());
  int col = 0;
  auto fill = [&](const std::string& text, int budget) {
    std::vector<std::string> tokens = lex::normalize_tokens(text);
    for (int i = 0; i < budget; ++i, ++col) {
      if (i < static_cast<int>(tokens.size()))
        xs.col(col) = table.lookup(tokens[i]);
      // else: null word stays the zero vector
    }
  };
  fill(s_text, spec.t_s);
  fill(p_text, spec.t_p);
  fill(l_text, spec.t_l);
  return xs;
}

Eigen::VectorXd gru_step(const Eigen::VectorXd& x, const Eigen::VectorXd& h_prev,
                         const GruParams& p) {
  if (p.w_h.cols() != x.size() || p.u_h.cols() != h_prev.size() ||
      p.w_h.rows() != h_prev.size())
    throw Error("gru_step: shape mismatch");
  Eigen::ArrayXd r = sigmoid((p.w_r * x + p.u_r * h_prev + p.b_r).array());
  Eigen::ArrayXd z = sigmoid((p.w_z * x + p.u_z * h_prev + p.b_z).array());
  Eigen::ArrayXd hc =
      ((p.w_h * x).array() + r * (p.u_h * h_prev).array() + p.b_h.array())
          .tanh();
  return ((1.0 - z) * h_prev.array() + z * hc).matrix();
}

Eigen::MatrixXd birnn_encode(const Eigen::MatrixXd& xs, const GruParams& fwd,
                             const GruParams& bwd) {
  const int t_total = static_cast<int>(xs.cols());
  const int d_r = static_cast<int>(fwd.w_h.rows());
  Eigen::MatrixXd hs(2 * d_r, t_total);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(d_r);
  for (int t = 0; t < t_total; ++t) {
    h = gru_step(xs.col(t), h, fwd);
    hs.col(t).head(d_r) = h;
  }
  h.setZero();
  for (int t = t_total - 1; t >= 0; --t) {
    h = gru_step(xs.col(t), h, bwd);
    hs.col(t).tail(d_r) = h;
  }
  return hs;
}

AttentionOutput attention(const Eigen::MatrixXd& hs, const AttentionParams& p) {
  const int t_total = static_cast<int>(hs.cols());
  const int d_a = static_cast<int>(p.w_w.rows());
  Eigen::MatrixXd u(d_a, t_total);
  Eigen::VectorXd scores(t_total);
  for (int t = 0; t < t_total; ++t) {
    u.col(t) = ((p.w_w * hs.col(t) + p.b_w).array().tanh()).matrix();
    scores[t] = u.col(t).dot(p.u_w);
  }
  // stable softmax
  double max_score = scores.maxCoeff();
  Eigen::VectorXd alpha = (scores.array() - max_score).exp();
  alpha /= alpha.sum();

  AttentionOutput out;
  out.alpha = alpha;
  out.h_a = Eigen::VectorXd(t_total * d_a);
  for (int t = 0; t < t_total; ++t)
    out.h_a.segment(t * d_a, d_a) = alpha[t] * u.col(t);
  return out;
}

ForwardOutput forward(const ClassifierModel& model, const std::string& s_text,
                      const std::string& p_text, const std::string& l_text,
                      const EmbeddingTable& table) {
  if (table.dim() != model.dim_word)
    throw Error("embedding dimension does not match model");
  Eigen::MatrixXd xs = encode_sequence(s_text, p_text, l_text, model.seq, table);
  ForwardOutput out;
  if (model.kind == EncoderKind::mlp) {
    out.score = mlp_forward(model, s_text, p_text, l_text, table);
    return out;
  }
  Eigen::MatrixXd hs = birnn_encode(xs, model.fwd, model.bwd);
  AttentionOutput att = attention(hs, model.att);
  out.alpha = att.alpha;
  out.score = sigmoid(model.w_f.dot(att.h_a) + model.b_f);
  return out;
}

double mlp_forward(const ClassifierModel& model, const std::string& s_text,
                   const std::string& p_text, const std::string& l_text,
                   const EmbeddingTable& table) {
  if (model.kind != EncoderKind::mlp) throw Error("model is not an MLP");
  Eigen::MatrixXd xs = encode_sequence(s_text, p_text, l_text, model.seq, table);
  Eigen::VectorXd flat =
      Eigen::Map<const Eigen::VectorXd>(xs.data(), xs.size());
  Eigen::VectorXd h1 = ((model.mlp.w1 * flat + model.mlp.b1).array().tanh());
  return sigmoid(model.w_f.dot(h1) + model.b_f);
}

namespace {

constexpr char kMagic[4] = {'L', 'C', 'M', '1'};
constexpr uint32_t kFormatVersion = 1;

void write_u32(std::ostream& out, uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = (v >> (8 * i)) & 0xff;
  out.write(reinterpret_cast<const char*>(buf), 4);
}

uint32_t read_u32(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in) throw Error("truncated model file");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(buf[i]) << (8 * i);
  return v;
}

void write_string(std::ostream& out, const std::string& s) {
  write_u32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  uint32_t n = read_u32(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw Error("truncated model file");
  return s;
}

void write_f64_array(std::ostream& out, const double* data, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    uint64_t bits;
    std::memcpy(&bits, &data[i], 8);
    unsigned char buf[8];
    for (int b = 0; b < 8; ++b) buf[b] = (bits >> (8 * b)) & 0xff;
    out.write(reinterpret_cast<const char*>(buf), 8);
  }
}

void read_f64_array(std::istream& in, double* data, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (!in) throw Error("truncated model file");
    uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<uint64_t>(buf[b]) << (8 * b);
    std::memcpy(&data[i], &bits, 8);
  }
}

}  // namespace

void save_model(const ClassifierModel& model, std::ostream& out) {
  out.write(kMagic, 4);
  write_u32(out, kFormatVersion);
  write_string(out, model.class_iri);
  out.put(static_cast<char>(model.kind));
  write_u32(out, static_cast<uint32_t>(model.seq.t_s));
  write_u32(out, static_cast<uint32_t>(model.seq.t_p));
  write_u32(out, static_cast<uint32_t>(model.seq.t_l));
  write_u32(out, static_cast<uint32_t>(model.dim_word));
  write_u32(out, static_cast<uint32_t>(model.dim_hidden));
  write_u32(out, static_cast<uint32_t>(model.dim_att));
  auto tensors = model.tensors();
  write_u32(out, static_cast<uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    write_string(out, t.name);
    write_u32(out, static_cast<uint32_t>(t.size));
    write_f64_array(out, t.data, t.size);
  }
  if (!out) throw Error("model write failed");
}

ClassifierModel load_model(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw Error("not a model file (bad magic)");
  uint32_t version = read_u32(in);
  if (version != kFormatVersion)
    throw Error("unsupported model format version " + std::to_string(version));
  std::string class_iri = read_string(in);
  int kind_byte = in.get();
  if (kind_byte != 0 && kind_byte != 1) throw Error("bad encoder kind");
  SeqSpec seq;
  seq.t_s = static_cast<int>(read_u32(in));
  seq.t_p = static_cast<int>(read_u32(in));
  seq.t_l = static_cast<int>(read_u32(in));
  int d_w = static_cast<int>(read_u32(in));
  int d_h = static_cast<int>(read_u32(in));
  int d_a = static_cast<int>(read_u32(in));

  ClassifierModel model =
      kind_byte == 0
          ? ClassifierModel::make_att_birnn(class_iri, seq, d_w, d_h, d_a)
          : ClassifierModel::make_mlp(class_iri, seq, d_w, d_h);
  auto tensors = model.tensors();
  uint32_t n_tensors = read_u32(in);
  if (n_tensors != tensors.size()) throw Error("tensor count mismatch");
  for (auto& t : tensors) {
    std::string name = read_string(in);
    uint32_t size = read_u32(in);
    if (name != t.name || size != t.size)
      throw Error("tensor shape mismatch for " + name);
    read_f64_array(in, t.data, t.size);
  }
  return model;
}

void save_model_file(const ClassifierModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_model(model, out);
}

ClassifierModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return load_model(in);
}

}  // namespace neuro
}  // namespace litecanon
