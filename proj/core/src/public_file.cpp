#include "cnmzk/public_file.hpp"

#include "json.hpp"

namespace cnmzk::protocol {
namespace {

using nlohmann::json;

json vk_to_json(const sig::BBVerKey& vk) {
  return {{"g1", to_hex(vk.g1.encode())},
          {"g2", to_hex(vk.g2.encode())},
          {"u", to_hex(vk.u.encode())},
          {"v", to_hex(vk.v.encode())},
          {"z", to_hex(vk.z.encode())}};
}

algebra::Element element_from_hex(const algebra::Group& group, const std::string& hex) {
  const Bytes b = from_hex(hex);
  Reader in(b);
  auto e = in.element(group);
  in.expect_end();
  return e;
}

sig::BBVerKey vk_from_json(const algebra::Suite& suite, const json& j) {
  const auto& p = suite.pairing;
  return {element_from_hex(*p.g1(), j.at("g1")), element_from_hex(*p.g2(), j.at("g2")),
          element_from_hex(*p.g2(), j.at("u")), element_from_hex(*p.g2(), j.at("v")),
          element_from_hex(*p.gt(), j.at("z"))};
}

}  // namespace

std::string_view to_string(Owner o) { return o == Owner::kHonest ? "honest" : "adversary"; }

std::size_t PublicFile::add(const sig::BBVerKey& vk0, const sig::BBVerKey& vk1, Owner owner, std::string owner_id) {
  if (frozen_) throw ProtocolError("public file is frozen");
  if (!vk0.well_formed(suite_.pairing) || !vk1.well_formed(suite_.pairing)) {
    throw ProtocolError("malformed verification key");
  }
  KeyRecord rec{records_.size() + 1, vk0, vk1, owner, std::move(owner_id)};
  records_.push_back(std::move(rec));
  return records_.size();
}

const KeyRecord& PublicFile::at(std::size_t index) const {
  if (!contains(index)) throw ProtocolError("no public key with index " + std::to_string(index));
  return records_[index - 1];
}

std::string PublicFile::to_json() const {
  const algebra::SchnorrGroupParams params = suite_.params();
  json records = json::array();
  for (const KeyRecord& r : records_) {
    records.push_back({{"index", r.index},
                       {"owner", std::string(to_string(r.owner))},
                       {"owner_id", r.owner_id},
                       {"vk0", vk_to_json(r.vk0)},
                       {"vk1", vk_to_json(r.vk1)}});
  }
  json j{{"params", {{"p", params.p.get_str()}, {"q", params.q.get_str()}, {"g", params.g.get_str()}}},
         {"backend", suite_.pairing.name()},
         {"frozen", frozen_},
         {"records", records}};
  return j.dump(2);
}

PublicFile PublicFile::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const json& pj = j.at("params");
    const algebra::SchnorrGroupParams params{mpz_class(pj.at("p").get<std::string>()),
                                             mpz_class(pj.at("q").get<std::string>()),
                                             mpz_class(pj.at("g").get<std::string>())};
    const std::string backend = j.at("backend");
    if (backend != "transparent" && backend != "schnorr") throw DecodeError("unknown backend " + backend);
    const auto kind =
        backend == "transparent" ? algebra::PairingBackend::Kind::kTransparent : algebra::PairingBackend::Kind::kSchnorr;
    PublicFile file(algebra::Suite::make(params, kind));
    for (const json& r : j.at("records")) {
      const Owner owner = r.at("owner") == "adversary" ? Owner::kAdversary : Owner::kHonest;
      const std::size_t idx = file.add(vk_from_json(file.suite_, r.at("vk0")), vk_from_json(file.suite_, r.at("vk1")),
                                       owner, r.value("owner_id", std::string()));
      if (idx != r.at("index").get<std::size_t>()) throw DecodeError("public file indices are not sequential");
    }
    if (j.value("frozen", false)) file.freeze();
    return file;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("public file: ") + e.what());
  }
}

std::string keys_to_json(const sig::BBVerKey& vk0, const sig::BBVerKey& vk1) {
  return json{{"vk0", vk_to_json(vk0)}, {"vk1", vk_to_json(vk1)}}.dump(2);
}

std::pair<sig::BBVerKey, sig::BBVerKey> keys_from_json(const algebra::Suite& suite, const std::string& text) {
  try {
    const json j = json::parse(text);
    return {vk_from_json(suite, j.at("vk0")), vk_from_json(suite, j.at("vk1"))};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("key record: ") + e.what());
  }
}

}  // namespace cnmzk::protocol
