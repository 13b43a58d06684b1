#include <doctest.h>

#include <filesystem>

#include "zsum/c1search.hpp"
#include "zsum/io.hpp"

using namespace zsum;

TEST_CASE("certificate JSON round-trips and re-verifies") {
  AtomSet atoms = enumerate_atoms(make_group({3, 3}));
  RhoResult r = rho3_exact(atoms);
  std::string text = certificate_to_json(*r.certificate, r.value);

  int64_t claimed = 0;
  Certificate back = certificate_from_json(text, &claimed);
  CHECK(claimed == r.value);
  CHECK(back.left.size() == r.certificate->left.size());
  CHECK(back.right.size() == r.certificate->right.size());
  CHECK(certificate_to_json(back, claimed) == text);

  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "zsum-cert-test.json";
  write_certificate(*r.certificate, r.value, path.string());
  Certificate from_file = read_certificate(path.string(), &claimed);
  CHECK(certificate_to_json(from_file, claimed) == text);
  fs::remove(path);
}

TEST_CASE("loading rejects corrupted certificates with a named check") {
  AtomSet atoms = enumerate_atoms(make_group({2, 4}));
  RhoResult r = rho3_exact(atoms);
  std::string text = certificate_to_json(*r.certificate, r.value);

  // claim more atoms than the document carries
  std::string bad = text;
  auto pos = bad.find("\"claimed_rho\": 7");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos, 16, "\"claimed_rho\": 8");
  CHECK_THROWS_WITH_AS(certificate_from_json(bad),
                       "InvalidCertificate: certificate has fewer atoms than claimed_rho", Error);

  CHECK_THROWS_AS(certificate_from_json("{not json"), Error);
}

TEST_CASE("witness report serialization carries the claim and the spread") {
  WitnessReport w = lemma46_witness(2);
  std::string text = witness_report_to_json(w);
  CHECK(text.find("\"rho_k\": 3") != std::string::npos);
  CHECK(text.find("\"value\": 6") != std::string::npos);
  CHECK(text.find("\"traversals\": 0") != std::string::npos);
  CHECK(text.find("\"verified\": true") != std::string::npos);
}
