// Copyright 2026  The pemiu-toolkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED.  See the Apache 2 License for the specific
// language governing permissions and limitations under the License.

#include "core/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/textio.hpp"
#include "core/version.hpp"

namespace pemiu {

namespace {

// Binary container layout (all integers little endian):
//   "PSEB"  u8 version  u8 flags(bit0 unit_norm)  u32 dim  u32 count
//   per record: u32 id_len, id bytes, u32 identity, u8 attribute, dim * f32
constexpr char kMagic[4] = {'P', 'S', 'E', 'B'};
constexpr std::uint8_t kBinaryVersion = 1;
constexpr double kUnitNormTolerance = 1e-6;

void put_u32(std::string& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
               static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.append(b, 4);
}

void put_f32(std::string& out, float f) {
  std::uint32_t v;
  std::memcpy(&v, &f, 4);
  put_u32(out, v);
}

struct Cursor {
  const std::string& buf;
  std::size_t pos = 0;

  void need(std::size_t n, const char* what) {
    if (pos + n > buf.size())
      throw MalformedFileError("truncated file: needed " + std::to_string(n) +
                                   " bytes for " + what + " at offset " +
                                   std::to_string(pos) + ", data ends at offset " +
                                   std::to_string(buf.size()),
                               buf.size());
  }

  std::uint8_t u8(const char* what) {
    need(1, what);
    return static_cast<std::uint8_t>(buf[pos++]);
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
      v = (v << 8) | static_cast<std::uint8_t>(buf[pos + static_cast<std::size_t>(i)]);
    pos += 4;
    return v;
  }

  float f32(const char* what) {
    std::uint32_t bits = u32(what);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
  }

  std::string bytes(std::size_t n, const char* what) {
    need(n, what);
    std::string s = buf.substr(pos, n);
    pos += n;
    return s;
  }
};

double plain_norm(const Embedding& v) {
  double sum = 0.0;
  for (float x : v) sum += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(sum);
}

void check_unit_norm(const Embedding& v, std::size_t record_index, std::size_t offset) {
  double n = plain_norm(v);
  if (std::fabs(n - 1.0) > kUnitNormTolerance)
    throw MalformedFileError("record " + std::to_string(record_index) +
                                 ": unit-norm flag set but norm is " + fmt_double(n),
                             offset);
}

std::filesystem::path manifest_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".manifest.json";
  return p;
}

std::string csv_escape_guard(const std::string& id) {
  if (id.find_first_of(",\"\r\n") != std::string::npos)
    fail(PEMIU_E_INVALID_ARGUMENT,
         "record id '" + id + "' contains characters the CSV container cannot hold");
  return id;
}

// Lines of `text` with the byte offset of each line start.  Handles \n and
// \r\n, tolerates a missing final newline.
std::vector<std::pair<std::size_t, std::string_view>> split_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string::npos ? text.size() : nl;
    std::size_t len = end - start;
    if (len > 0 && text[start + len - 1] == '\r') --len;
    lines.emplace_back(start, std::string_view(text).substr(start, len));
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
bool parse_exact(std::string_view field, T& out) {
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

Dataset read_binary(const std::string& data, const std::filesystem::path& path);
Dataset read_csv(const std::string& data, const std::filesystem::path& path);

nlohmann::ordered_json load_sidecar(const std::filesystem::path& path) {
  std::filesystem::path mp = manifest_path(path);
  if (!file_exists(mp)) return nlohmann::ordered_json();
  std::string text = read_file(mp);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw MalformedFileError("manifest " + mp.string() + " is not a JSON object", 0);
  return j;
}

}  // namespace

Dataset::Dataset(std::vector<DatasetRecord> records, nlohmann::ordered_json manifest)
    : records_(std::move(records)), manifest_(std::move(manifest)) {
  if (manifest_.contains("dim") && manifest_["dim"].is_number_unsigned())
    dim_ = manifest_["dim"].get<std::uint32_t>();
  else if (!records_.empty())
    dim_ = static_cast<std::uint32_t>(records_.front().values.size());
  if (manifest_.contains("unit_norm") && manifest_["unit_norm"].is_boolean())
    unit_norm_ = manifest_["unit_norm"].get<bool>();
  by_id_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    auto [it, inserted] = by_id_.emplace(records_[i].id, i);
    if (!inserted)
      fail(PEMIU_E_DUPLICATE_RECORD_ID,
           "dataset: record id '" + records_[i].id + "' appears more than once");
  }
  validate();
}

void Dataset::validate() const {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const DatasetRecord& r = records_[i];
    if (r.values.size() != dim_)
      fail(PEMIU_E_DIMENSION_MISMATCH,
           "dataset: record '" + r.id + "' has length " +
               std::to_string(r.values.size()) + ", expected " + std::to_string(dim_));
    if (r.attribute > 1)
      fail(PEMIU_E_INVALID_ARGUMENT,
           "dataset: record '" + r.id + "' has non-binary attribute " +
               std::to_string(r.attribute));
    validate_finite(r.values, "dataset record '" + r.id + "'");
    if (unit_norm_) {
      double n = plain_norm(r.values);
      if (std::fabs(n - 1.0) > kUnitNormTolerance)
        fail(PEMIU_E_INVALID_ARGUMENT,
             "dataset: unit-norm flag set but record '" + r.id + "' has norm " +
                 fmt_double(n));
    }
  }
}

std::size_t Dataset::index_of(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end())
    fail(PEMIU_E_UNKNOWN_RECORD, "dataset: no record with id '" + id + "'");
  return it->second;
}

Dataset Dataset::generate(const SynthSpec& spec, int threads) {
  if (spec.dim == 0) fail(PEMIU_E_INVALID_SPEC, "generate: dim must be positive");
  if (spec.n_identities == 0)
    fail(PEMIU_E_INVALID_SPEC, "generate: n_identities must be positive");
  if (spec.samples_per_identity == 0)
    fail(PEMIU_E_INVALID_SPEC, "generate: samples_per_identity must be positive");
  if (!(spec.intra_sigma >= 0.0))
    fail(PEMIU_E_INVALID_SPEC, "generate: intra_sigma must be >= 0");
  if (!(spec.attribute_offset >= 0.0))
    fail(PEMIU_E_INVALID_SPEC, "generate: attribute_offset must be >= 0");

  const std::uint32_t s = spec.dim;

  // Fixed attribute direction, shared by the whole corpus.
  std::vector<double> direction(s);
  {
    Rng rng(derive_seed(spec.seed, kStreamAttributeDirection, 0));
    double sq = 0.0;
    for (std::uint32_t c = 0; c < s; ++c) {
      direction[c] = rng.normal();
      sq += direction[c] * direction[c];
    }
    double n = std::sqrt(sq);
    if (n <= 1e-12) fail(PEMIU_E_ZERO_VECTOR, "generate: degenerate attribute direction");
    for (double& d : direction) d /= n;
  }

  const std::size_t total =
      static_cast<std::size_t>(spec.n_identities) * spec.samples_per_identity;
  std::vector<DatasetRecord> records(total);

  parallel_for(spec.n_identities, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> centroid(s), sample(s);
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(derive_seed(spec.seed, kStreamIdentity, i));
      double sq = 0.0;
      for (std::uint32_t c = 0; c < s; ++c) {
        centroid[c] = rng.normal();
        sq += centroid[c] * centroid[c];
      }
      double n = std::sqrt(sq);
      if (n <= 1e-12) fail(PEMIU_E_ZERO_VECTOR, "generate: degenerate identity centroid");
      for (double& c : centroid) c /= n;

      const std::uint8_t attribute = static_cast<std::uint8_t>(i % 2);
      const double shift = attribute ? spec.attribute_offset : -spec.attribute_offset;
      for (std::uint32_t j = 0; j < spec.samples_per_identity; ++j) {
        for (std::uint32_t c = 0; c < s; ++c)
          sample[c] = centroid[c] + shift * direction[c] + spec.intra_sigma * rng.normal();
        if (spec.unit_norm) {
          double ssq = 0.0;
          for (double x : sample) ssq += x * x;
          double sn = std::sqrt(ssq);
          if (sn <= 1e-12)
            fail(PEMIU_E_ZERO_VECTOR, "generate: sample collapsed to the zero vector");
          for (double& x : sample) x /= sn;
        }
        DatasetRecord& rec = records[i * spec.samples_per_identity + j];
        char idbuf[32];
        std::snprintf(idbuf, sizeof(idbuf), "i%06u_s%02u", static_cast<unsigned>(i),
                      static_cast<unsigned>(j));
        rec.id = idbuf;
        rec.identity = static_cast<std::uint32_t>(i);
        rec.attribute = attribute;
        rec.values.resize(s);
        for (std::uint32_t c = 0; c < s; ++c)
          rec.values[c] = static_cast<float>(sample[c]);
      }
    }
  });

  nlohmann::ordered_json provenance;
  provenance["kind"] = "synthetic";
  provenance["n_identities"] = spec.n_identities;
  provenance["samples_per_identity"] = spec.samples_per_identity;
  provenance["intra_sigma"] = spec.intra_sigma;
  provenance["attribute_offset"] = spec.attribute_offset;
  provenance["seed"] = spec.seed;
  return Dataset(std::move(records),
                 make_manifest("memory", s, spec.unit_norm, total, std::move(provenance)));
}

nlohmann::ordered_json make_manifest(const std::string& format, std::uint32_t dim,
                                     bool unit_norm, std::size_t records,
                                     nlohmann::ordered_json provenance) {
  nlohmann::ordered_json m;
  m["format"] = format;
  m["dim"] = dim;
  m["unit_norm"] = unit_norm;
  m["records"] = records;
  m["provenance"] = std::move(provenance);
  m["prng"] = kPrngId;
  m["version"] = kVersion;
  m["config_digest"] = fnv1a64_hex(m["provenance"].dump());
  return m;
}

namespace {

Dataset read_binary(const std::string& data, const std::filesystem::path& path) {
  Cursor cur{data};
  std::string magic = cur.bytes(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0)
    throw MalformedFileError("bad magic, not an embedding container", 0);
  std::uint8_t version = cur.u8("format version");
  if (version != kBinaryVersion)
    throw MalformedFileError("unsupported container version " + std::to_string(version), 4);
  std::uint8_t flags = cur.u8("flags");
  if (flags > 1) throw MalformedFileError("unknown flag bits set", 5);
  const bool unit_norm = (flags & 1) != 0;
  std::uint32_t dim = cur.u32("dimension");
  if (dim == 0) throw MalformedFileError("zero embedding dimension", 6);
  std::uint32_t count = cur.u32("record count");

  std::vector<DatasetRecord> records;
  records.reserve(count);
  for (std::uint32_t r = 0; r < count; ++r) {
    std::size_t record_start = cur.pos;
    DatasetRecord rec;
    std::uint32_t id_len = cur.u32("id length");
    rec.id = cur.bytes(id_len, "record id");
    rec.identity = cur.u32("identity label");
    rec.attribute = cur.u8("attribute label");
    if (rec.attribute > 1)
      throw MalformedFileError("record " + std::to_string(r) + ": attribute byte is " +
                                   std::to_string(rec.attribute) + ", expected 0 or 1",
                               cur.pos - 1);
    rec.values.resize(dim);
    for (std::uint32_t c = 0; c < dim; ++c) {
      std::size_t value_offset = cur.pos;
      rec.values[c] = cur.f32("embedding value");
      if (!std::isfinite(rec.values[c]))
        throw MalformedFileError(
            "record " + std::to_string(r) + ": non-finite value at component " +
                std::to_string(c),
            value_offset);
    }
    if (unit_norm) check_unit_norm(rec.values, r, record_start);
    records.push_back(std::move(rec));
  }
  if (cur.pos != data.size())
    throw MalformedFileError("unexpected trailing data after last record", cur.pos);

  nlohmann::ordered_json manifest = load_sidecar(path);
  if (manifest.is_null() || manifest.empty()) {
    nlohmann::ordered_json provenance;
    provenance["kind"] = "import";
    provenance["path"] = path.string();
    manifest = make_manifest("pseb-binary-v1", dim, unit_norm, records.size(),
                             std::move(provenance));
  } else {
    if (manifest.value("dim", dim) != dim ||
        manifest.value("records", records.size()) != records.size() ||
        manifest.value("unit_norm", unit_norm) != unit_norm)
      throw MalformedFileError("manifest sidecar disagrees with container header", 0);
  }
  return Dataset(std::move(records), std::move(manifest));
}

Dataset read_csv(const std::string& data, const std::filesystem::path& path) {
  nlohmann::ordered_json manifest = load_sidecar(path);
  const bool unit_norm =
      !manifest.is_null() && manifest.value("unit_norm", false);

  auto lines = split_lines(data);
  if (lines.empty()) throw MalformedFileError("empty file", 0);

  auto header = split_fields(lines[0].second);
  if (header.size() < 4 || header[0] != "id" || header[1] != "identity" ||
      header[2] != "attribute")
    throw MalformedFileError("unexpected CSV header, want id,identity,attribute,v0,...", 0);
  const std::uint32_t dim = static_cast<std::uint32_t>(header.size() - 3);
  for (std::uint32_t c = 0; c < dim; ++c) {
    if (header[3 + c] != "v" + std::to_string(c))
      throw MalformedFileError("unexpected CSV header, value columns must be v0..v" +
                                   std::to_string(dim - 1),
                               0);
  }

  std::vector<DatasetRecord> records;
  records.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto [offset, line] = lines[li];
    if (line.empty()) {
      if (li + 1 == lines.size()) break;  // single trailing blank line
      throw MalformedFileError("blank line " + std::to_string(li + 1), offset);
    }
    auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw MalformedFileError("line " + std::to_string(li + 1) + ": expected " +
                                   std::to_string(header.size()) + " fields, found " +
                                   std::to_string(fields.size()),
                               offset);
    DatasetRecord rec;
    rec.id = std::string(fields[0]);
    if (!parse_exact(fields[1], rec.identity))
      throw MalformedFileError("line " + std::to_string(li + 1) + ": bad identity label",
                               offset);
    std::uint32_t attr;
    if (!parse_exact(fields[2], attr) || attr > 1)
      throw MalformedFileError("line " + std::to_string(li + 1) + ": bad attribute", offset);
    rec.attribute = static_cast<std::uint8_t>(attr);
    rec.values.resize(dim);
    for (std::uint32_t c = 0; c < dim; ++c) {
      float v;
      if (!parse_exact(fields[3 + c], v) || !std::isfinite(v))
        throw MalformedFileError("line " + std::to_string(li + 1) + ": bad value in v" +
                                     std::to_string(c),
                                 offset);
      rec.values[c] = v;
    }
    if (unit_norm) check_unit_norm(rec.values, records.size(), offset);
    records.push_back(std::move(rec));
  }

  if (manifest.is_null() || manifest.empty()) {
    nlohmann::ordered_json provenance;
    provenance["kind"] = "import";
    provenance["path"] = path.string();
    manifest = make_manifest("pseb-csv-v1", dim, false, records.size(),
                             std::move(provenance));
  } else {
    if (manifest.value("dim", dim) != dim ||
        manifest.value("records", records.size()) != records.size())
      throw MalformedFileError("manifest sidecar disagrees with CSV contents", 0);
  }
  return Dataset(std::move(records), std::move(manifest));
}

}  // namespace

void write_dataset(const Dataset& ds, const std::filesystem::path& path,
                   DatasetFormat format) {
  std::string out;
  nlohmann::ordered_json manifest = ds.manifest();
  if (format == DatasetFormat::Binary) {
    manifest["format"] = "pseb-binary-v1";
    out.reserve(14 + ds.size() * (16 + static_cast<std::size_t>(ds.dim()) * 4));
    out.append(kMagic, 4);
    out.push_back(static_cast<char>(kBinaryVersion));
    out.push_back(static_cast<char>(ds.unit_norm() ? 1 : 0));
    put_u32(out, ds.dim());
    put_u32(out, static_cast<std::uint32_t>(ds.size()));
    for (const DatasetRecord& rec : ds.records()) {
      put_u32(out, static_cast<std::uint32_t>(rec.id.size()));
      out.append(rec.id);
      put_u32(out, rec.identity);
      out.push_back(static_cast<char>(rec.attribute));
      for (float v : rec.values) put_f32(out, v);
    }
  } else {
    manifest["format"] = "pseb-csv-v1";
    out.append("id,identity,attribute");
    for (std::uint32_t c = 0; c < ds.dim(); ++c) out.append(",v" + std::to_string(c));
    out.push_back('\n');
    for (const DatasetRecord& rec : ds.records()) {
      out.append(csv_escape_guard(rec.id));
      out.push_back(',');
      out.append(std::to_string(rec.identity));
      out.push_back(',');
      out.append(std::to_string(rec.attribute));
      for (float v : rec.values) {
        out.push_back(',');
        out.append(fmt_float(v));
      }
      out.push_back('\n');
    }
  }
  write_file(path, out);
  write_file(manifest_path(path), manifest.dump(2) + "\n");
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::string data = read_file(path);
  if (data.size() >= 4 && std::memcmp(data.data(), kMagic, 4) == 0)
    return read_binary(data, path);
  return read_csv(data, path);
}

Pairing load_pairing(const std::filesystem::path& path) {
  std::string data = read_file(path);
  auto lines = split_lines(data);
  Pairing pairing;
  pairing.reserve(lines.size());
  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto [offset, line] = lines[li];
    if (line.empty()) {
      if (li + 1 == lines.size()) break;
      throw MalformedFileError("blank line " + std::to_string(li + 1), offset);
    }
    if (li == 0 && line == "id_a,id_b,mated") continue;
    auto fields = split_fields(line);
    if (fields.size() != 3)
      throw MalformedFileError("line " + std::to_string(li + 1) +
                                   ": expected id_a,id_b,mated",
                               offset);
    PairEntry e;
    e.a = std::string(fields[0]);
    e.b = std::string(fields[1]);
    if (fields[2] == "0")
      e.mated = false;
    else if (fields[2] == "1")
      e.mated = true;
    else
      throw MalformedFileError("line " + std::to_string(li + 1) +
                                   ": mated flag must be 0 or 1",
                               offset);
    pairing.push_back(std::move(e));
  }
  return pairing;
}

Pairing all_pairs(const Dataset& ds) {
  Pairing pairing;
  const std::size_t n = ds.size();
  pairing.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PairEntry e;
      e.a = ds.record(i).id;
      e.b = ds.record(j).id;
      e.mated = ds.record(i).identity == ds.record(j).identity;
      pairing.push_back(std::move(e));
    }
  }
  return pairing;
}

}  // namespace pemiu
