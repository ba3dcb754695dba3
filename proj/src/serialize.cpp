#include "ncsim/serialize.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace ncsim {

nlohmann::json rowspace_to_json(const RowSpace& s) {
  nlohmann::json j;
  j["ambient"] = s.ambient();
  j["q"] = s.field().q();
  if (s.field().is_binary()) j["poly"] = s.field().reduction_poly();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < s.basis().rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < s.ambient(); ++c) row.push_back(s.basis().at(r, c));
    rows.push_back(std::move(row));
  }
  j["basis"] = std::move(rows);
  return j;
}

RowSpace rowspace_from_json(const nlohmann::json& j) {
  const Field f = Field::make(j.at("q").get<std::uint32_t>(), j.value("poly", 0u));
  const std::size_t ambient = j.at("ambient").get<std::size_t>();
  const auto& rows = j.at("basis");
  Mat m(f, rows.size(), ambient);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ambient; ++c) m.at(r, c) = rows[r][c].get<felem>();
  return RowSpace::span(m);
}

nlohmann::json SnapshotSet::to_json() const {
  nlohmann::json j;
  j["t"] = t;
  j["n"] = n;
  j["ambient"] = ambient;
  j["source"] = source;
  nlohmann::json ns = nlohmann::json::array();
  for (const auto& sn : nodes) {
    nlohmann::json jn;
    jn["node"] = sn.node;
    jn["space"] = rowspace_to_json(sn.space);
    nlohmann::json bs = nlohmann::json::array();
    for (const auto& b : sn.branches) {
      nlohmann::json jb;
      jb["parent"] = b.parent;
      jb["cum"] = rowspace_to_json(b.cum);
      jb["inc"] = rowspace_to_json(b.inc);
      bs.push_back(std::move(jb));
    }
    jn["branches"] = std::move(bs);
    ns.push_back(std::move(jn));
  }
  j["nodes"] = std::move(ns);
  return j;
}

SnapshotSet SnapshotSet::from_json(const nlohmann::json& j) {
  SnapshotSet s;
  s.t = j.at("t").get<int>();
  s.n = j.at("n").get<int>();
  s.ambient = j.at("ambient").get<int>();
  s.source = j.at("source").get<int>();
  for (const auto& jn : j.at("nodes")) {
    SnapshotNode sn{jn.at("node").get<int>(), rowspace_from_json(jn.at("space")), {}};
    for (const auto& jb : jn.at("branches"))
      sn.branches.push_back({jb.at("parent").get<int>(), rowspace_from_json(jb.at("cum")),
                             rowspace_from_json(jb.at("inc"))});
    s.nodes.push_back(std::move(sn));
  }
  return s;
}

namespace {

unsigned bits_per_elem(std::uint32_t q) {
  unsigned b = 1;
  while ((1ull << b) < q) ++b;
  return b;
}

struct BitWriter {
  std::vector<std::uint8_t>& out;
  std::uint64_t acc = 0;
  unsigned fill = 0;
  void put(std::uint32_t v, unsigned bits) {
    acc |= std::uint64_t(v) << fill;
    fill += bits;
    while (fill >= 8) {
      out.push_back(std::uint8_t(acc & 0xff));
      acc >>= 8;
      fill -= 8;
    }
  }
  void flush() {
    if (fill) {
      out.push_back(std::uint8_t(acc & 0xff));
      acc = 0;
      fill = 0;
    }
  }
};

struct BitReader {
  const std::vector<std::uint8_t>& in;
  std::size_t pos;
  std::uint64_t acc = 0;
  unsigned fill = 0;
  std::uint32_t get(unsigned bits) {
    while (fill < bits) {
      acc |= std::uint64_t(in.at(pos++)) << fill;
      fill += 8;
    }
    const std::uint32_t v = std::uint32_t(acc & ((1ull << bits) - 1));
    acc >>= bits;
    fill -= bits;
    return v;
  }
  void align() {
    acc = 0;
    fill = 0;
  }
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t((v >> (8 * i)) & 0xff));
}
std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(in.at(pos++)) << (8 * i);
  return v;
}

}  // namespace

std::vector<std::uint8_t> snapshot_to_binary(const SnapshotSet& s, const Field& f) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), {'N', 'C', 'S', 'S'});
  put_u32(out, 1);  // version
  put_u32(out, f.q());
  put_u32(out, f.is_binary() ? f.reduction_poly() : 0);
  put_u32(out, std::uint32_t(s.t));
  put_u32(out, std::uint32_t(s.n));
  put_u32(out, std::uint32_t(s.ambient));
  put_u32(out, std::uint32_t(s.source));
  put_u32(out, std::uint32_t(s.nodes.size()));
  const unsigned bits = bits_per_elem(f.q());
  for (const auto& sn : s.nodes) {
    put_u32(out, std::uint32_t(sn.node));
    put_u32(out, std::uint32_t(sn.space.dim()));
    BitWriter w{out};
    for (std::size_t r = 0; r < sn.space.dim(); ++r)
      for (std::size_t c = 0; c < sn.space.ambient(); ++c) w.put(sn.space.basis().at(r, c), bits);
    w.flush();
    put_u32(out, std::uint32_t(sn.branches.size()));
    for (const auto& b : sn.branches) {
      put_u32(out, std::uint32_t(b.parent));
      for (const RowSpace* sp : {&b.cum, &b.inc}) {
        put_u32(out, std::uint32_t(sp->dim()));
        BitWriter bw{out};
        for (std::size_t r = 0; r < sp->dim(); ++r)
          for (std::size_t c = 0; c < sp->ambient(); ++c) bw.put(sp->basis().at(r, c), bits);
        bw.flush();
      }
    }
  }
  return out;
}

SnapshotSet snapshot_from_binary(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "NCSS", 4) != 0)
    throw IoFailure("bad snapshot magic");
  pos = 4;
  if (get_u32(bytes, pos) != 1) throw IoFailure("unsupported snapshot version");
  const std::uint32_t q = get_u32(bytes, pos);
  const std::uint32_t poly = get_u32(bytes, pos);
  const Field f = Field::make(q, poly);
  SnapshotSet s;
  s.t = int(get_u32(bytes, pos));
  s.n = int(get_u32(bytes, pos));
  s.ambient = int(get_u32(bytes, pos));
  s.source = int(get_u32(bytes, pos));
  const std::uint32_t count = get_u32(bytes, pos);
  const unsigned bits = bits_per_elem(q);
  auto read_space = [&](std::uint32_t dim) {
    Mat m(f, dim, s.ambient);
    BitReader r{bytes, pos};
    for (std::uint32_t i = 0; i < dim; ++i)
      for (int c = 0; c < s.ambient; ++c) m.at(i, c) = r.get(bits);
    pos = r.pos;
    return RowSpace::span(m);
  };
  for (std::uint32_t i = 0; i < count; ++i) {
    SnapshotNode sn;
    sn.node = int(get_u32(bytes, pos));
    const std::uint32_t dim = get_u32(bytes, pos);
    sn.space = read_space(dim);
    const std::uint32_t nb = get_u32(bytes, pos);
    for (std::uint32_t b = 0; b < nb; ++b) {
      SnapshotBranch br;
      br.parent = int(get_u32(bytes, pos));
      const std::uint32_t dc = get_u32(bytes, pos);
      br.cum = read_space(dc);
      const std::uint32_t di = get_u32(bytes, pos);
      br.inc = read_space(di);
      sn.branches.push_back(std::move(br));
    }
    s.nodes.push_back(std::move(sn));
  }
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open for writing: " + path);
  out << contents;
  if (!out) throw IoFailure("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ncsim
