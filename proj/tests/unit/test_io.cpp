#include <gtest/gtest.h>

#include <filesystem>

#include "tenrank/decomposition.hpp"
#include "tenrank/degeneration.hpp"
#include "tenrank/digest.hpp"
#include "tenrank/families.hpp"
#include "tenrank/io.hpp"

using namespace tenrank;

TEST(Io, TensorRoundTrip) {
  CycTensor t = l_state(3, 4).scaled(Cyclotomic::root(12, 5) - Cyclotomic(Rational(1, 3)));
  Json j = to_json(t);
  EXPECT_EQ(j["scalar"], "cyc");
  EXPECT_EQ(j["entries"].size(), 10u);
  // entries come out in lexicographic index order
  for (std::size_t k = 1; k < j["entries"].size(); ++k)
    EXPECT_LT(j["entries"][k - 1]["idx"].get<std::vector<int>>(), j["entries"][k]["idx"].get<std::vector<int>>());
  EXPECT_EQ(expect_kind<Cyclotomic>(tensor_from_json(j)), t);
  EXPECT_EQ(digest(expect_kind<Cyclotomic>(tensor_from_json(Json::parse(j.dump())))), digest(t));

  EpsTensor e = expand(eps_decomposition(Family::L, 2, 3));
  EXPECT_EQ(expect_kind<EpsLaurent>(tensor_from_json(to_json(e))), e);
  EXPECT_THROW(expect_kind<Cyclotomic>(tensor_from_json(to_json(e))), Error);
}

TEST(Io, TensorParseErrors) {
  auto code = [](const std::string& text) {
    try {
      tensor_from_json(Json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::DivisionByZero;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code(R"({"shape":[2,2],"scalar":"cyc"})"), ErrorCode::ParseError);
  EXPECT_EQ(code(R"({"shape":[2,2],"scalar":"float","entries":[]})"), ErrorCode::ParseError);
  EXPECT_EQ(code(R"({"shape":[2,2],"scalar":"cyc","entries":[{"idx":[0,1],"val":"z3^"}]})"), ErrorCode::ParseError);
  EXPECT_EQ(code(R"({"shape":[2,2],"scalar":"cyc","entries":[{"idx":[0,2],"val":"1"}]})"), ErrorCode::IndexOutOfShape);
  EXPECT_EQ(code(R"({"shape":[2,2],"scalar":"cyc","entries":[{"idx":[0],"val":"1"}]})"), ErrorCode::IndexOutOfShape);
}

TEST(Io, DecompositionAndMapsRoundTrip) {
  CycDecomposition d = decompose_l(3, 3);
  CycDecomposition back = decomposition_from_json<Cyclotomic>(Json::parse(to_json(d).dump()));
  EXPECT_EQ(back.size(), d.size());
  EXPECT_TRUE(verify_decomposition(l_state(3, 3), back));
  EpsDecomposition ed = eps_decomposition(Family::NPRIME, 3, 3);
  EpsDecomposition eback = decomposition_from_json<EpsLaurent>(to_json(ed));
  EXPECT_EQ(expand(eback), expand(ed));
  EpsLocalMap m = canonical_chain_maps(ChainStep::L_TO_M, 3, 4);
  EpsLocalMap mback = local_map_from_json<EpsLaurent>(to_json(m));
  ASSERT_EQ(mback.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(mback[i], m[i]);
  EXPECT_THROW(local_map_from_json<Cyclotomic>(to_json(m)), Error);
}

TEST(Io, CertificateRoundTrip) {
  auto cert = *pyramid_persistence(l_state(3, 4));
  PersistenceCertificate back = persistence_certificate_from_json(Json::parse(to_json(cert).dump()));
  EXPECT_EQ(back.subject, cert.subject);
  EXPECT_EQ(back.witness_chain, cert.witness_chain);
  EXPECT_EQ(back.method, cert.method);
  EXPECT_EQ(persistent_lower_bound(l_state(3, 4), back).lower, 7);
  Json rc = to_json(family_rank_certificate({Family::L, 3, 4}));
  EXPECT_EQ(rc["lower"], 7);
  EXPECT_EQ(rc["upper"], 7);
  EXPECT_EQ(rc["exact"], true);
  EXPECT_FALSE(rc["trace"].empty());
}

TEST(Io, Files) {
  auto path = std::filesystem::temp_directory_path() / "tenrank_io_test.json";
  write_json_file(path, to_json(w_state(4)));
  EXPECT_EQ(expect_kind<Cyclotomic>(tensor_from_json(read_json_file(path))), w_state(4));
  std::filesystem::remove(path);
  EXPECT_THROW(read_json_file(path), Error);
}
