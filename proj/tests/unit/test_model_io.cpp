#include <doctest.h>

#include <sstream>

#include "pfft/errors.hpp"
#include "pfft/fpm/model_io.hpp"

using namespace pfft;
using namespace pfft::fpm;

TEST_SUITE("model_io") {

TEST_CASE("round trip preserves time bit-for-bit") {
  std::vector<SpeedFunction> fns;
  SpeedFunction a(0), b(3);
  a.insert(SpeedPoint::from_time(128, 256, 0.1));
  a.insert(SpeedPoint::from_time(128, 512, 1.0 / 3.0));  // not exactly representable in decimal
  b.insert(SpeedPoint::from_time(256, 512, 7.25e-4));
  fns.push_back(a);
  fns.push_back(b);

  std::stringstream ss;
  save_model_csv(ss, fns);

  LoadReport report;
  std::vector<SpeedFunction> back = load_model_csv(ss, &report);
  CHECK(report.warnings.empty());
  REQUIRE(back.size() == 2);
  CHECK(back[0].processor_id() == 0);
  CHECK(back[1].processor_id() == 3);
  REQUIRE(back[0].size() == 2);
  REQUIRE(back[1].size() == 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < fns[i].size(); ++j) {
      CHECK(back[i].points()[j].time_s == fns[i].points()[j].time_s);  // bitwise
      CHECK(back[i].points()[j].speed ==
            doctest::Approx(fns[i].points()[j].speed).epsilon(1e-12));
    }
}

TEST_CASE("comments and blank lines are tolerated") {
  std::stringstream ss;
  ss << "# produced by a sweep\n"
     << "\n"
     << "processor_id,x,y,time_s,speed\n"
     << "0,128,256,0.5,1310720\n";
  std::vector<SpeedFunction> fns = load_model_csv(ss);
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].find(128, 256) != nullptr);
}

TEST_CASE("malformed rows fail with the line number") {
  auto expect_fail = [](const std::string& body, const char* needle) {
    std::stringstream ss;
    ss << "processor_id,x,y,time_s,speed\n" << body;
    try {
      load_model_csv(ss);
      FAIL_CHECK("expected DomainError for: " << body);
    } catch (const DomainError& e) {
      std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find(needle) != std::string::npos);
    }
  };
  expect_fail("0,128,256,0.5\n", "5 fields");
  expect_fail("0,128,256,0.5,10,extra\n", "5 fields");
  expect_fail("zero,128,256,0.5,10\n", "processor_id");
  expect_fail("0,128,abc,0.5,10\n", "bad y");
  expect_fail("0,128,256,nope,10\n", "time_s");
  expect_fail("0,-4,256,0.5,10\n", "positive");
  expect_fail("0,128,256,0,10\n", "time_s");
}

TEST_CASE("wrong or missing header fails") {
  {
    std::stringstream ss;
    ss << "id,x,y,t,s\n0,1,2,0.5,10\n";
    CHECK_THROWS_AS(load_model_csv(ss), DomainError);
  }
  {
    std::stringstream ss;  // empty file
    CHECK_THROWS_AS(load_model_csv(ss), DomainError);
  }
}

TEST_CASE("stored speed is advisory: recomputed on load, mismatch warns") {
  std::stringstream ss;
  ss << "processor_id,x,y,time_s,speed\n"
     << "0,128,256,0.5,999\n";  // wildly off
  LoadReport report;
  std::vector<SpeedFunction> fns = load_model_csv(ss, &report);
  REQUIRE(fns.size() == 1);
  const SpeedPoint* p = fns[0].find(128, 256);
  REQUIRE(p != nullptr);
  CHECK(p->speed == speed_from_time(128, 256, 0.5));
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].line == 2);

  // a tiny mismatch (<= 1e-6 relative) loads clean
  std::stringstream ok;
  double s = speed_from_time(128, 256, 0.5);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.8g", s * (1 + 4e-7));
  ok << "processor_id,x,y,time_s,speed\n0,128,256,0.5," << buf << "\n";
  LoadReport clean;
  load_model_csv(ok, &clean);
  CHECK(clean.warnings.empty());
}

TEST_CASE("duplicate keys keep the last value and warn") {
  std::stringstream ss;
  ss << "processor_id,x,y,time_s,speed\n"
     << "0,128,256,0.5,1310720\n"
     << "0,128,256,0.25,2621440\n";
  LoadReport report;
  std::vector<SpeedFunction> fns = load_model_csv(ss, &report);
  REQUIRE(fns.size() == 1);
  CHECK(fns[0].size() == 1);
  CHECK(fns[0].find(128, 256)->time_s == 0.25);
  REQUIRE(report.warnings.size() == 1);
  CHECK(report.warnings[0].message.find("duplicate") != std::string::npos);
}

TEST_CASE("functions come back ordered by processor id") {
  std::stringstream ss;
  ss << "processor_id,x,y,time_s,speed\n"
     << "5,128,256,0.5,1310720\n"
     << "1,128,256,0.5,1310720\n"
     << "3,128,256,0.5,1310720\n";
  std::vector<SpeedFunction> fns = load_model_csv(ss);
  REQUIRE(fns.size() == 3);
  CHECK(fns[0].processor_id() == 1);
  CHECK(fns[1].processor_id() == 3);
  CHECK(fns[2].processor_id() == 5);
}

}  // TEST_SUITE
