#include "revsyn/cost.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace revsyn {

std::uint64_t quantum_cost(const Circuit& circuit, const CostTable& table) {
  validate_circuit(circuit);
  std::uint64_t total = 0;
  for (const Gate& g : circuit.gates) total += static_cast<std::uint64_t>(table.of(g.kind));
  return total;
}

bool CouplingMap::adjacent(int a, int b) const {
  for (const auto& [u, v] : edges)
    if ((u == a && v == b) || (u == b && v == a)) return true;
  return false;
}

bool CouplingMap::connected() const {
  if (qubit_count < 1) return false;
  std::vector<bool> seen(static_cast<std::size_t>(qubit_count) + 1, false);
  std::queue<int> frontier;
  frontier.push(1);
  seen[1] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (const auto& [u, v] : edges) {
      const int other = u == q ? v : (v == q ? u : 0);
      if (other && !seen[static_cast<std::size_t>(other)]) {
        seen[static_cast<std::size_t>(other)] = true;
        ++reached;
        frontier.push(other);
      }
    }
  }
  return reached == qubit_count;
}

void validate_coupling(const CouplingMap& map) {
  if (map.qubit_count < 1 || map.qubit_count > 64)
    throw std::invalid_argument("qubit count must be in 1..64");
  for (const auto& [u, v] : map.edges) {
    if (u < 1 || u > map.qubit_count || v < 1 || v > map.qubit_count || u == v)
      throw std::invalid_argument("coupling edge references invalid qubits");
  }
  if (!map.connected())
    throw std::invalid_argument("coupling map must be connected");
}

CouplingMap CouplingMap::melbourne_like() {
  CouplingMap map;
  map.qubit_count = 15;
  for (int i = 1; i < 8; ++i) map.edges.emplace_back(i, i + 1);        // top row
  for (int i = 9; i < 15; ++i) map.edges.emplace_back(i, i + 1);      // bottom row
  for (int i = 1; i <= 7; ++i) map.edges.emplace_back(i, i + 8);      // rungs
  return map;
}

CouplingMap CouplingMap::complete(int qubits) {
  CouplingMap map;
  map.qubit_count = qubits;
  for (int a = 1; a <= qubits; ++a)
    for (int b = a + 1; b <= qubits; ++b) map.edges.emplace_back(a, b);
  return map;
}

CouplingMap CouplingMap::line(int qubits) {
  CouplingMap map;
  map.qubit_count = qubits;
  for (int i = 1; i < qubits; ++i) map.edges.emplace_back(i, i + 1);
  return map;
}

CouplingMap CouplingMap::parse(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  CouplingMap map;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    std::istringstream toks(raw);
    std::string head;
    if (!(toks >> head)) continue;
    if (head == "qubits") {
      if (!(toks >> map.qubit_count))
        throw std::runtime_error("line " + std::to_string(lineno) + ": bad qubit count");
      have_header = true;
    } else if (head == "edge") {
      int a = 0, b = 0;
      if (!(toks >> a >> b))
        throw std::runtime_error("line " + std::to_string(lineno) + ": bad edge");
      map.edges.emplace_back(a, b);
    } else {
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected 'qubits' or 'edge'");
    }
  }
  if (!have_header) throw std::runtime_error("coupling map missing 'qubits' header");
  validate_coupling(map);
  return map;
}

CouplingMap CouplingMap::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coupling map: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string CouplingMap::serialize() const {
  std::ostringstream out;
  out << "qubits " << qubit_count << "\n";
  for (const auto& [u, v] : edges) out << "edge " << u << ' ' << v << "\n";
  return out.str();
}

PrimitiveGate PrimitiveGate::one_qubit(int q, Action action) {
  PrimitiveGate g;
  g.hw = Hw::OneQubit;
  g.action = action;
  g.lines = {static_cast<std::uint8_t>(q), 0, 0};
  g.noise_lines = {static_cast<std::uint8_t>(q), 0};
  return g;
}

PrimitiveGate PrimitiveGate::two_qubit(int a, int b, Action action) {
  PrimitiveGate g;
  g.hw = Hw::TwoQubit;
  g.action = action;
  g.lines = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), 0};
  g.noise_lines = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)};
  return g;
}

PrimitiveGate PrimitiveGate::virtual_toffoli(int a, int b, int c) {
  PrimitiveGate g;
  g.hw = Hw::Virtual;
  g.action = Action::Toffoli;
  g.lines = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
             static_cast<std::uint8_t>(c)};
  return g;
}

std::uint64_t PrimitiveCircuit::one_qubit_count() const {
  std::uint64_t n = 0;
  for (const auto& g : gates) n += g.hw == PrimitiveGate::Hw::OneQubit;
  return n;
}

std::uint64_t PrimitiveCircuit::two_qubit_count() const {
  std::uint64_t n = 0;
  for (const auto& g : gates) n += g.hw == PrimitiveGate::Hw::TwoQubit;
  return n;
}

std::uint32_t PrimitiveCircuit::run_mask(std::uint32_t s) const {
  for (const auto& g : gates) {
    switch (g.action) {
      case PrimitiveGate::Action::Noop:
        break;
      case PrimitiveGate::Action::Not:
        s ^= 1u << (g.lines[0] - 1);
        break;
      case PrimitiveGate::Action::Cnot:
        s ^= ((s >> (g.lines[0] - 1)) & 1u) << (g.lines[1] - 1);
        break;
      case PrimitiveGate::Action::Toffoli:
        s ^= (((s >> (g.lines[0] - 1)) & (s >> (g.lines[1] - 1))) & 1u)
             << (g.lines[2] - 1);
        break;
    }
  }
  return s;
}

namespace {

// Shortest path between qubits, tie-broken toward lower qubit indices.
std::vector<int> shortest_path(const CouplingMap& map, int from, int to) {
  const std::size_t n = static_cast<std::size_t>(map.qubit_count) + 1;
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : map.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::vector<int> dist(n, -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(to)] = 0;
  frontier.push(to);
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (int nb : adj[static_cast<std::size_t>(q)]) {
      if (dist[static_cast<std::size_t>(nb)] < 0) {
        dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(q)] + 1;
        frontier.push(nb);
      }
    }
  }

  std::vector<int> path{from};
  int cur = from;
  while (cur != to) {
    for (int nb : adj[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(nb)] == dist[static_cast<std::size_t>(cur)] - 1) {
        cur = nb;  // neighbors are sorted, so this picks the lowest index
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

class Lowerer {
 public:
  Lowerer(const CouplingMap& coupling, PrimitiveCircuit& out)
      : coupling_(coupling), out_(out) {}

  void emit_swap(int a, int b) {
    out_.gates.push_back(PrimitiveGate::two_qubit(a, b, PrimitiveGate::Action::Cnot));
    out_.gates.push_back(PrimitiveGate::two_qubit(b, a, PrimitiveGate::Action::Cnot));
    out_.gates.push_back(PrimitiveGate::two_qubit(a, b, PrimitiveGate::Action::Cnot));
  }

  // Routes a 2-qubit primitive: swap the control along the path until the
  // operands are adjacent, apply, swap back.
  void emit_routed(int a, int b, PrimitiveGate::Action action) {
    if (coupling_.adjacent(a, b)) {
      out_.gates.push_back(PrimitiveGate::two_qubit(a, b, action));
      return;
    }
    const std::vector<int> path = shortest_path(coupling_, a, b);
    const std::size_t k = path.size() - 1;
    for (std::size_t i = 0; i < k; ++i) emit_swap(path[i], path[i + 1]);
    // Values of a and b now sit on the last edge of the path.
    out_.gates.push_back(PrimitiveGate::two_qubit(path[k], path[k - 1], action));
    for (std::size_t i = k; i-- > 0;) emit_swap(path[i], path[i + 1]);
  }

  // Standard 6-CNOT + 9 single-qubit Toffoli network. The constituent
  // gates carry no classical action of their own; a virtual slot at the
  // block end applies the aggregate Toffoli effect.
  void emit_toffoli(int a, int b, int c) {
    const auto noop = PrimitiveGate::Action::Noop;
    out_.gates.push_back(PrimitiveGate::one_qubit(c, noop));  // H
    emit_routed(b, c, noop);
    out_.gates.push_back(PrimitiveGate::one_qubit(c, noop));  // Tdg
    emit_routed(a, c, noop);
    out_.gates.push_back(PrimitiveGate::one_qubit(c, noop));  // T
    emit_routed(b, c, noop);
    out_.gates.push_back(PrimitiveGate::one_qubit(c, noop));  // Tdg
    emit_routed(a, c, noop);
    out_.gates.push_back(PrimitiveGate::one_qubit(b, noop));  // T
    out_.gates.push_back(PrimitiveGate::one_qubit(c, noop));  // T
    out_.gates.push_back(PrimitiveGate::one_qubit(c, noop));  // H
    emit_routed(a, b, noop);
    out_.gates.push_back(PrimitiveGate::one_qubit(a, noop));  // T
    out_.gates.push_back(PrimitiveGate::one_qubit(b, noop));  // Tdg
    emit_routed(a, b, noop);
    out_.gates.push_back(PrimitiveGate::virtual_toffoli(a, b, c));
  }

  void emit_gate(const Gate& g) {
    const int a = g.args[0], b = g.args[1], c = g.args[2];
    switch (g.kind) {
      case GateKind::Identity:
        break;
      case GateKind::Not:
        out_.gates.push_back(PrimitiveGate::one_qubit(a, PrimitiveGate::Action::Not));
        break;
      case GateKind::Cnot:
        emit_routed(a, b, PrimitiveGate::Action::Cnot);
        break;
      case GateKind::Swap:
        emit_routed(a, b, PrimitiveGate::Action::Cnot);
        emit_routed(b, a, PrimitiveGate::Action::Cnot);
        emit_routed(a, b, PrimitiveGate::Action::Cnot);
        break;
      case GateKind::Toffoli:
        emit_toffoli(a, b, c);
        break;
      case GateKind::Fredkin:
        emit_routed(c, b, PrimitiveGate::Action::Cnot);
        emit_toffoli(a, b, c);
        emit_routed(c, b, PrimitiveGate::Action::Cnot);
        break;
    }
  }

 private:
  const CouplingMap& coupling_;
  PrimitiveCircuit& out_;
};

}  // namespace

PrimitiveCircuit decompose(const Circuit& circuit, const CouplingMap& coupling) {
  validate_circuit(circuit);
  validate_coupling(coupling);
  if (circuit.line_count > coupling.qubit_count)
    throw std::invalid_argument("circuit wider than coupling map");

  PrimitiveCircuit out;
  out.qubit_count = coupling.qubit_count;
  Lowerer lowerer(coupling, out);
  for (const Gate& g : circuit.gates) lowerer.emit_gate(g);
  return out;
}

std::uint64_t circuit_cost(const Circuit& circuit, const CouplingMap& coupling) {
  const PrimitiveCircuit prim = decompose(circuit, coupling);
  return prim.one_qubit_count() + 10 * prim.two_qubit_count();
}

}  // namespace revsyn
