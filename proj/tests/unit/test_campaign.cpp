#include <doctest.h>

#include <transmod/campaign.hpp>

#include <cmath>
#include <cstdlib>
#include <set>

using namespace transmod;

namespace {

// A few seconds of work that still touches every criterion.
CampaignConfig small_config() {
  CampaignConfig c;
  c.square_h = c.annulus_h = c.gallery_h = c.axiom_h = 1.0 / 16;
  c.polar_ns = {2, 5};
  c.twin_ns = {2, 3};
  c.kissing_ns = {2, 4};
  c.min_feature_cells = 1;
  c.random_domains = 2;
  c.random_disks = 3;
  c.packings = 50;
  c.certificate_fixtures = 1;
  c.certificate_radial = 24;
  c.point_fixtures = 1;
  c.points_added = 3;
  return c;
}

}  // namespace

TEST_SUITE("campaign") {

TEST_CASE("row relations") {
  CHECK(make_row(1, "a", "c", "le", 1, 1.05, 0.1).pass);
  CHECK(!make_row(1, "a", "c", "le", 1, 1.2, 0.1).pass);
  CHECK(make_row(1, "a", "c", "ge", 1, 0.95, 0.1).pass);
  CHECK(!make_row(1, "a", "c", "ge", 1, 0.8, 0.1).pass);
  CHECK(make_row(1, "a", "c", "approx", 1, 0.91, 0.1).pass);
  CHECK(!make_row(1, "a", "c", "approx", 1, 1.11, 0.1).pass);
  CHECK_THROWS_AS(make_row(1, "a", "c", "lt", 1, 1, 0), Error);
}

TEST_CASE("log-log slope of power laws") {
  const std::vector<double> n = {2, 5, 10, 20};
  std::vector<double> inv, root;
  for (double v : n) {
    inv.push_back(3.0 / v);
    root.push_back(7.0 / std::sqrt(v));
  }
  CHECK(loglog_slope(n, inv) == doctest::Approx(-1.0));
  CHECK(loglog_slope(n, root) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), Error);
}

TEST_CASE("csv layout") {
  const std::vector<CheckRow> rows = {make_row(2, "c2.x", "a, b", "le", 0.5, 0.25, 0)};
  CHECK(campaign_csv(rows) ==
        "check_id,citation,relation,expected,observed,slack,result\nc2.x,\"a, b\",le,0.5,0.25,0,pass\n");
}

TEST_CASE("thread count honours the environment") {
  ::setenv("TRANSMOD_THREADS", "3", 1);
  CHECK(campaign_threads() == 3);
  ::setenv("TRANSMOD_THREADS", "0", 1);
  CHECK(campaign_threads() >= 1);
  ::unsetenv("TRANSMOD_THREADS");
}

TEST_CASE("a small campaign covers every criterion and is deterministic") {
  CampaignConfig c = small_config();
  c.threads = 1;
  const auto a = run_campaign(c);
  c.threads = 3;
  const auto b = run_campaign(c);
  CHECK(campaign_csv(a) == campaign_csv(b));
  std::set<int> criteria;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < a.size(); ++i) {
    criteria.insert(a[i].criterion);
    CHECK(ids.insert(a[i].id).second);
    if (i) CHECK(std::make_pair(a[i - 1].criterion, a[i - 1].id) < std::make_pair(a[i].criterion, a[i].id));
  }
  CHECK(criteria == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("an inflated twin-squares constant is caught") {
  CampaignConfig c = small_config();
  c.twin_constant = 21;
  // Only the rectangle-sum rows depend on the constant; they must all fail.
  int rect_rows = 0;
  for (const auto& r : run_campaign(c))
    if (r.id.find(".rectangles") != std::string::npos) {
      ++rect_rows;
      CHECK(!r.pass);
    }
  CHECK(rect_rows == 2);
}

}  // TEST_SUITE
