#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "punn/errors.hpp"
#include "punn/network.hpp"

namespace punn {

namespace {

constexpr std::string_view kModelMagic = "punn-model";
constexpr int kModelVersion = 1;

std::string fmt_weight(double w) { return fmt::format("{:.17g}", w); }

// Reads "<key> <value>" and checks the key.
std::size_t expect_count(std::istream& in, std::string_view key) {
  std::string word;
  std::size_t value = 0;
  if (!(in >> word) || word != key || !(in >> value)) {
    throw ParseError(fmt::format("model: expected '{} <n>'", key));
  }
  return value;
}

void expect_word(std::istream& in, std::string_view word) {
  std::string got;
  if (!(in >> got) || got != word) {
    throw ParseError(fmt::format("model: expected '{}', found '{}'", word, got));
  }
}

template <class T>
T read_value(std::istream& in, std::string_view what) {
  T v{};
  if (!(in >> v)) throw ParseError(fmt::format("model: malformed {}", what));
  return v;
}

}  // namespace

std::string model_to_text(const SavedModel& model) {
  const Network& net = model.network;
  std::string out;
  out += fmt::format("{} {}\n", kModelMagic, kModelVersion);
  out += fmt::format("inputs {}\nclasses {}\nmax_hidden {}\nhidden_nodes {}\n", net.inputs(),
                     net.classes(), model.max_hidden, net.hidden_count());
  for (std::size_t j = 0; j < net.hidden_count(); ++j) {
    const auto& node = net.node(j);
    out += fmt::format("node {} {}", j, node.input_link_count());
    for (std::size_t i = 0; i < net.inputs(); ++i) {
      if (node.has_input(i)) out += fmt::format(" {} {}", i, fmt_weight(node.exponents[i]));
    }
    out += '\n';
  }
  for (std::size_t l = 0; l < net.outputs(); ++l) {
    std::size_t links = 0;
    for (const auto& node : net.nodes()) links += node.has_output(l) ? 1 : 0;
    out += fmt::format("output {} {} {}", l, fmt_weight(net.bias(l)), links);
    for (std::size_t j = 0; j < net.hidden_count(); ++j) {
      if (net.node(j).has_output(l)) {
        out += fmt::format(" {} {}", j, fmt_weight(net.node(j).coefficients[l]));
      }
    }
    out += '\n';
  }
  out += "end\n";
  return out;
}

SavedModel model_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kModelMagic) throw ParseError("not a punn model");
  if (version != kModelVersion) throw ParseError(fmt::format("unsupported model version {}", version));

  const std::size_t inputs = expect_count(in, "inputs");
  const std::size_t classes = expect_count(in, "classes");
  const std::size_t max_hidden = expect_count(in, "max_hidden");
  const std::size_t hidden = expect_count(in, "hidden_nodes");
  if (inputs == 0 || classes < 2 || hidden == 0) throw ParseError("model: invalid dimensions");

  SavedModel model{Network(inputs, classes, hidden), max_hidden};
  Network& net = model.network;
  for (std::size_t j = 0; j < hidden; ++j) {
    expect_word(in, "node");
    if (read_value<std::size_t>(in, "node index") != j) throw ParseError("model: node out of order");
    const auto links = read_value<std::size_t>(in, "link count");
    for (std::size_t n = 0; n < links; ++n) {
      const auto i = read_value<std::size_t>(in, "input index");
      const auto w = read_value<double>(in, "exponent");
      if (i >= inputs) throw ParseError("model: input index out of range");
      net.node(j).set_input(i, w);
    }
  }
  for (std::size_t l = 0; l < net.outputs(); ++l) {
    expect_word(in, "output");
    if (read_value<std::size_t>(in, "output index") != l) throw ParseError("model: output out of order");
    net.set_bias(l, read_value<double>(in, "bias"));
    const auto links = read_value<std::size_t>(in, "link count");
    for (std::size_t n = 0; n < links; ++n) {
      const auto j = read_value<std::size_t>(in, "hidden index");
      const auto c = read_value<double>(in, "coefficient");
      if (j >= hidden) throw ParseError("model: hidden index out of range");
      net.node(j).set_output(l, c);
    }
  }
  expect_word(in, "end");
  return model;
}

void write_model(const std::string& path, const SavedModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  out << model_to_text(model);
  if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

SavedModel read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_text(buf.str());
}

}  // namespace punn
