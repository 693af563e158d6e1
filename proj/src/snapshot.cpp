#include "rmstream/snapshot.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "rmstream/error.hpp"

namespace rmstream {
namespace {

using json = nlohmann::json;

std::string crc_of(const std::string& text) {
  const auto crc = ::crc32(::crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(text.data()),
                           static_cast<uInt>(text.size()));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return std::string("crc32:") + buf;
}

json config_to_json(const DistanceConfig& c) {
  json j;
  j["band_radius"] = c.band_radius ? json(*c.band_radius) : json(nullptr);
  j["weights"] = c.weights ? json(*c.weights) : json(nullptr);
  j["day_slice"] = c.day_slice ? json::array({c.day_slice->begin, c.day_slice->end}) : json(nullptr);
  j["cost"] = c.cost == CostKind::Absolute ? "absolute" : "squared";
  j["scale_days"] = c.scale_days;
  return j;
}

DistanceConfig config_from_json(const json& j) {
  DistanceConfig c;
  if (!j.at("band_radius").is_null()) c.band_radius = j.at("band_radius").get<std::size_t>();
  if (!j.at("weights").is_null()) c.weights = j.at("weights").get<std::vector<double>>();
  if (!j.at("day_slice").is_null()) {
    const auto s = j.at("day_slice").get<std::vector<std::size_t>>();
    if (s.size() != 2) fail(ErrorKind::CorruptState, "snapshot: bad day_slice");
    c.day_slice = DaySlice{s[0], s[1]};
  }
  const auto cost = j.at("cost").get<std::string>();
  if (cost == "absolute") {
    c.cost = CostKind::Absolute;
  } else if (cost == "squared") {
    c.cost = CostKind::Squared;
  } else {
    fail(ErrorKind::CorruptState, "snapshot: unknown cost '" + cost + "'");
  }
  c.scale_days = j.at("scale_days").get<bool>();
  return c;
}

json days_to_json(const std::vector<DayPattern>& days) {
  json arr = json::array();
  for (const auto& d : days) arr.push_back({{"day", d.day_index}, {"values", d.values}});
  return arr;
}

std::vector<DayPattern> days_from_json(const json& j) {
  std::vector<DayPattern> out;
  for (const auto& d : j) {
    out.push_back(DayPattern{d.at("day").get<std::size_t>(), d.at("values").get<std::vector<double>>()});
  }
  return out;
}

json records_to_json(const std::vector<SimilarityRecord>& recs) {
  json arr = json::array();
  for (const auto& r : recs) arr.push_back(json::array({r.count, r.norm_mean_dist}));
  return arr;
}

std::vector<SimilarityRecord> records_from_json(const json& j) {
  std::vector<SimilarityRecord> out;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != 2) fail(ErrorKind::CorruptState, "snapshot: bad record");
    out.push_back({r[0].get<std::size_t>(), r[1].get<double>()});
  }
  return out;
}

struct Encoded {
  std::string kind;
  json payload;
};

Encoded encode(const AdditiveState& s) {
  const auto& f = s.fields();
  return {"additive",
          {{"tsd", days_to_json(f.tsd)},
           {"records", records_to_json(f.records)},
           {"d_max", f.d_max},
           {"threshold", f.threshold},
           {"config", config_to_json(f.config)}}};
}

Encoded encode(const FixedMemoryState& s) {
  const auto& f = s.fields();
  return {"fixed",
          {{"window", days_to_json(f.window)},
           {"records", records_to_json(f.records)},
           {"d_max", f.d_max},
           {"threshold", f.threshold},
           {"memory", f.memory},
           {"strategy", to_string(f.strategy)},
           {"config", config_to_json(f.config)}}};
}

Encoded encode(const CodebookState& s) {
  const auto& f = s.fields();
  json p{{"codewords", days_to_json(f.codewords)},
         {"records", records_to_json(f.records)},
         {"d_max", f.d_max},
         {"threshold", f.threshold},
         {"d_rep", f.d_rep},
         {"config", config_to_json(f.config)}};
  if (f.variant == CodebookVariant::WithCR) {
    p["cr"] = f.cr;
  } else {
    p["occurrences"] = f.occurrences;
  }
  return {to_string(f.variant), std::move(p)};
}

Encoded encode(const ClassifierModel& m) {
  return {"classifier",
          {{"weights", m.weights},
           {"bias", m.bias},
           {"decision_threshold", m.decision_threshold},
           {"scale_input", m.scale_input},
           {"seed", m.seed}}};
}

Snapshot decode(const std::string& kind, const json& p) {
  if (kind == "additive") {
    return AdditiveState::from_fields({days_from_json(p.at("tsd")), records_from_json(p.at("records")),
                                       p.at("d_max").get<double>(), p.at("threshold").get<double>(),
                                       config_from_json(p.at("config"))});
  }
  if (kind == "fixed") {
    DropStrategy strategy;
    try {
      strategy = parse_drop_strategy(p.at("strategy").get<std::string>());
    } catch (const Error&) {
      fail(ErrorKind::CorruptState, "snapshot: unknown strategy");
    }
    return FixedMemoryState::from_fields(
        {days_from_json(p.at("window")), records_from_json(p.at("records")),
         p.at("d_max").get<double>(), p.at("threshold").get<double>(),
         p.at("memory").get<std::size_t>(), strategy, config_from_json(p.at("config"))});
  }
  if (kind == "codebook-cr" || kind == "codebook-pd") {
    CodebookState::Fields f;
    f.variant = kind == "codebook-cr" ? CodebookVariant::WithCR : CodebookVariant::PatternsDictionary;
    f.codewords = days_from_json(p.at("codewords"));
    if (f.variant == CodebookVariant::WithCR) {
      f.cr = p.at("cr").get<std::vector<std::size_t>>();
    } else {
      f.occurrences = p.at("occurrences").get<std::vector<std::size_t>>();
    }
    f.records = records_from_json(p.at("records"));
    f.d_max = p.at("d_max").get<double>();
    f.threshold = p.at("threshold").get<double>();
    f.d_rep = p.at("d_rep").get<double>();
    f.config = config_from_json(p.at("config"));
    return CodebookState::from_fields(std::move(f));
  }
  if (kind == "classifier") {
    ClassifierModel m;
    m.weights = p.at("weights").get<std::vector<double>>();
    m.bias = p.at("bias").get<double>();
    m.decision_threshold = p.at("decision_threshold").get<double>();
    m.scale_input = p.at("scale_input").get<bool>();
    m.seed = p.at("seed").get<std::uint64_t>();
    return m;
  }
  fail(ErrorKind::CorruptState, "snapshot: unknown kind '" + kind + "'");
}

}  // namespace

std::string serialize_snapshot(const Snapshot& snapshot) {
  const auto enc = std::visit([](const auto& s) { return encode(s); }, snapshot);
  json doc;
  doc["format"] = "rmstate";
  doc["version"] = kSnapshotVersion;
  doc["kind"] = enc.kind;
  doc["payload"] = enc.payload;
  doc["checksum"] = crc_of(enc.payload.dump());
  return doc.dump(1) + "\n";
}

Snapshot parse_snapshot(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::CorruptState, std::string("snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "rmstate") {
      fail(ErrorKind::CorruptState, "not an rmstate snapshot");
    }
    const auto& version = doc.at("version");
    if (!version.is_number_integer() || version.get<long long>() != kSnapshotVersion) {
      fail(ErrorKind::UnsupportedVersion, "snapshot version " + version.dump() +
                                              " is not supported (expected " +
                                              std::to_string(kSnapshotVersion) + ")");
    }
    const auto& payload = doc.at("payload");
    if (doc.at("checksum").get<std::string>() != crc_of(payload.dump())) {
      fail(ErrorKind::CorruptState, "snapshot checksum mismatch");
    }
    return decode(doc.at("kind").get<std::string>(), payload);
  } catch (const json::exception& e) {
    fail(ErrorKind::CorruptState, std::string("snapshot field error: ") + e.what());
  }
}

void snapshot_save(const Snapshot& snapshot, const std::filesystem::path& path) {
  const std::string text = serialize_snapshot(snapshot);
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::Io, "cannot replace " + path.string() + ": " + ec.message());
  }
}

Snapshot snapshot_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snapshot(buf.str());
}

Snapshot to_snapshot(UpdaterState state) {
  return std::visit([](auto&& s) -> Snapshot { return std::move(s); }, std::move(state));
}

UpdaterState to_updater(Snapshot snapshot) {
  if (std::holds_alternative<ClassifierModel>(snapshot)) {
    fail(ErrorKind::InvalidInput, "snapshot holds a classifier, not an updater state");
  }
  return std::visit(
      [](auto&& s) -> UpdaterState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ClassifierModel>) {
          fail(ErrorKind::InvalidInput, "unreachable");
        } else {
          return std::move(s);
        }
      },
      std::move(snapshot));
}

}  // namespace rmstream
