#include "zsum/io.hpp"

#include <fstream>

#include <json.hpp>

namespace zsum {

namespace {

nlohmann::json cert_json(const Certificate& cert, int64_t claimed_rho) {
  nlohmann::json j;
  j["group"] = cert.group.spec_string();
  nlohmann::json left = nlohmann::json::array();
  for (const Sequence& s : cert.left) left.push_back(s.to_string());
  j["left"] = std::move(left);
  nlohmann::json right = nlohmann::json::array();
  for (const Sequence& s : cert.right) right.push_back(s.to_string());
  j["right"] = std::move(right);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : cert.parts) {
    nlohmann::json r = nlohmann::json::array();
    for (const Sequence& part : row) r.push_back(part.to_string());
    rows.push_back(std::move(r));
  }
  j["assignment"] = std::move(rows);
  j["claimed_rho"] = claimed_rho;
  return j;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert, int64_t claimed_rho) {
  return cert_json(cert, claimed_rho).dump(2);
}

Certificate certificate_from_json(const std::string& text, int64_t* claimed_rho) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::parse_error, std::string("certificate: ") + e.what());
  }
  Certificate cert;
  cert.group = parse_group_spec(j.at("group").get<std::string>());
  for (const auto& s : j.at("left"))
    cert.left.push_back(Sequence::parse(cert.group, s.get<std::string>()));
  for (const auto& s : j.at("right"))
    cert.right.push_back(Sequence::parse(cert.group, s.get<std::string>()));
  for (const auto& row : j.at("assignment")) {
    std::vector<Sequence> parts;
    for (const auto& s : row) parts.push_back(Sequence::parse(cert.group, s.get<std::string>()));
    cert.parts.push_back(std::move(parts));
  }
  if (claimed_rho) *claimed_rho = j.at("claimed_rho").get<int64_t>();
  verify_certificate(cert);
  if (static_cast<int64_t>(cert.right.size()) < j.at("claimed_rho").get<int64_t>())
    fail(Errc::invalid_certificate, "certificate has fewer atoms than claimed_rho");
  return cert;
}

void write_certificate(const Certificate& cert, int64_t claimed_rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::invalid_input, "cannot write " + path);
  out << certificate_to_json(cert, claimed_rho);
}

Certificate read_certificate(const std::string& path, int64_t* claimed_rho) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::invalid_input, "cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return certificate_from_json(text, claimed_rho);
}

std::string witness_report_to_json(const WitnessReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = std::move(params);
  j["claimed"] = {{"rho_k", report.claimed_k}, {"value", report.claimed_bound}};
  j["certificate"] = cert_json(report.certificate, report.claimed_bound);
  if (report.spread)
    j["spread"] = {{"ones", report.spread->count1},
                   {"doubles", report.spread->count2},
                   {"traversals", report.spread->count3}};
  j["verified"] = report.verified;
  return j.dump(2);
}

}  // namespace zsum
