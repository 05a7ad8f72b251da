#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "imnim/service.hpp"

using imnim::service::GameService;
using imnim::service::ServiceError;
using nlohmann::json;

namespace {

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    return std::to_string(e.status()) + " " + e.code();
  }
  return "no error";
}

json move(int pile, int amount) { return {{"pile", pile}, {"amount", amount}}; }

}  // namespace

TEST_SUITE("service") {
  TEST_CASE("create") {
    GameService svc;
    const json g = svc.create_game({{"p", 2}, {"m", 1}, {"a", 2}, {"b", 2}, {"engineSide", "none"}});
    CHECK(g.at("position") == json{{"pile0", 2}, {"pile1", 2}});
    CHECK(g.at("pending").is_null());
    CHECK(g.at("creditMover") == 1);
    CHECK(g.at("creditOther") == 1);
    CHECK(g.at("status") == "ongoing");
    CHECK(g.at("winner").is_null());
    CHECK(g.at("moves").empty());

    CHECK(error_code([&] { svc.create_game({{"p", 0}, {"m", 1}, {"a", 2}, {"b", 2}}); }) == "400 invalid_params");
    CHECK(error_code([&] { svc.create_game({{"p", 1}, {"m", 1}, {"a", 501}, {"b", 2}}); }) == "400 invalid_params");
    CHECK(error_code([&] { svc.create_game({{"p", 1}, {"m", 1}, {"a", 2}}); }) == "400 invalid_params");
    CHECK(error_code([&] { svc.create_game({{"p", 1}, {"m", 1}, {"a", 2}, {"b", 2}, {"engineSide", "x"}}); }) ==
          "400 invalid_params");
    CHECK(error_code([&] { svc.get_game("nope"); }) == "404 unknown_session");
  }

  TEST_CASE("engine moving second waits for the human") {
    GameService svc;
    const json g = svc.create_game({{"p", 3}, {"m", 2}, {"a", 20}, {"b", 27}, {"engineSide", "second"}});
    CHECK(g.at("moves").empty());
    CHECK(g.at("toMove") == "first");
    const json a = svc.get_analysis(g.at("id"));
    CHECK(a.at("verdict").at("outcome") == "N");
    CHECK(a.at("verdict").at("clause") == "NONE");
    CHECK(a.at("recommendedMove") == move(0, 3));
    CHECK(a.at("verdict").at("winningMove") == move(0, 3));
  }

  TEST_CASE("engine moving first replies at once") {
    GameService svc;
    const json g = svc.create_game({{"p", 3}, {"m", 2}, {"a", 20}, {"b", 27}, {"engineSide", "first"}});
    REQUIRE(g.at("moves").size() == 1);
    CHECK(g.at("engineMoves") == json::array({move(0, 3)}));
    CHECK(g.at("position") == json{{"pile0", 17}, {"pile1", 27}});
    CHECK(g.at("moves")[0].at("imitation") == false);
  }

  TEST_CASE("(2,1) line against the engine") {
    GameService svc;
    const json g = svc.create_game({{"p", 2}, {"m", 1}, {"a", 2}, {"b", 2}, {"engineSide", "second"}});
    const std::string id = g.at("id");
    const json r = svc.post_move(id, move(0, 1));
    // engine answers (1,2) -> (1,1) or another move, and the human can keep playing
    CHECK(r.at("moves").size() == 2);
    CHECK(r.at("moves")[0] == json{{"player", "first"}, {"pile", 0}, {"amount", 1}, {"imitation", false}});
    CHECK(r.at("engineMoves").size() == 1);
  }

  TEST_CASE("(2,1) line by two humans ends on the forbidden imitation") {
    GameService svc;
    const std::string id = svc.create_game({{"p", 2}, {"m", 1}, {"a", 2}, {"b", 2}}).at("id");
    svc.post_move(id, move(0, 1));
    json r = svc.post_move(id, move(1, 1));
    CHECK(r.at("moves")[1].at("imitation") == true);
    CHECK(r.at("creditOther") == 0);
    r = svc.post_move(id, move(0, 1));
    CHECK(r.at("position") == json{{"pile0", 0}, {"pile1", 1}});
    CHECK(r.at("pending") == json{{"target", 1}, {"base", 1}});
    CHECK(r.at("status") == "finished");
    CHECK(r.at("winner") == "first");
    CHECK(error_code([&] { svc.post_move(id, move(1, 1)); }) == "409 not_your_turn");

    const json a = svc.get_analysis(id);
    CHECK(a.at("legalMoves").empty());
    CHECK(a.at("forbiddenMoves") == json::array({move(1, 1)}));
    CHECK(a.at("recommendedMove").is_null());
    CHECK(a.at("verdict").at("outcome") == "P");
  }

  TEST_CASE("rejected moves") {
    GameService svc;
    const std::string id = svc.create_game({{"p", 1}, {"m", 1}, {"a", 2}, {"b", 3}}).at("id");
    CHECK(error_code([&] { svc.post_move(id, move(0, 5)); }) == "400 illegal_amount");
    CHECK(error_code([&] { svc.post_move(id, move(0, 0)); }) == "400 illegal_amount");
    CHECK(error_code([&] { svc.post_move(id, move(2, 1)); }) == "400 invalid_params");
    CHECK(error_code([&] { svc.post_move(id, {{"pile", 0}}); }) == "400 invalid_params");
    svc.post_move(id, move(0, 1));
    CHECK(error_code([&] { svc.post_move(id, move(1, 1)); }) == "400 imitation_budget_exhausted");
    CHECK(svc.get_game(id).at("moves").size() == 1);

    const json a = svc.get_analysis(id);
    CHECK(a.at("forbiddenMoves") == json::array({move(1, 1)}));
    CHECK(a.at("verdict").at("outcome") == "P");
    CHECK(a.at("verdict").at("clause") == "II");
    CHECK(a.at("legalMoves").size() == 3);
  }

  TEST_CASE("terminal start") {
    GameService svc;
    const json g = svc.create_game({{"p", 1}, {"m", 1}, {"a", 0}, {"b", 0}});
    CHECK(g.at("status") == "finished");
    CHECK(g.at("winner") == "second");
    CHECK(svc.get_analysis(g.at("id")).at("legalMoves").empty());
  }

  TEST_CASE("overlays") {
    GameService svc;
    const std::string id = svc.create_game({{"p", 1}, {"m", 1}, {"a", 8}, {"b", 8}}).at("id");
    const json a = svc.get_analysis(id);
    const json& ov = a.at("overlays");
    CHECK(ov.at("extent") == 8);
    std::set<std::pair<int, int>> cells;
    for (const json& c : ov.at("wythoffP")) cells.emplace(c.at("pile0"), c.at("pile1"));
    CHECK(cells == std::set<std::pair<int, int>>{{0, 0}, {1, 2}, {2, 1}, {3, 5}, {5, 3}, {4, 7}, {7, 4}});
    const json& rows = ov.at("staticClass");
    REQUIRE(rows.size() == 9);
    CHECK(rows[1].get<std::string>()[3] == 'D');
    CHECK(rows[2].get<std::string>()[3] == 'N');
    CHECK(rows[1].get<std::string>()[2] == 'P');
    CHECK(ov.at("current").at("kind") == "NonDynamicN");
    // GETs are side-effect free
    CHECK(svc.get_analysis(id) == a);
    CHECK(svc.get_game(id) == svc.get_game(id));
  }

  TEST_CASE("json-lines log") {
    const std::string path = "imnim_service_log_test.jsonl";
    std::remove(path.c_str());
    {
      imnim::service::ServiceOptions options;
      options.log_path = path;
      GameService svc(options);
      const std::string id = svc.create_game({{"p", 1}, {"m", 1}, {"a", 2}, {"b", 3}}).at("id");
      svc.post_move(id, move(0, 1));
    }
    std::ifstream in(path);
    std::string line;
    std::vector<json> lines;
    while (std::getline(in, line)) lines.push_back(json::parse(line));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].at("event") == "create");
    CHECK(lines[1].at("event") == "move");
    CHECK(lines[1].at("amount") == 1);
    std::remove(path.c_str());
  }

  TEST_CASE("concurrent sessions") {
    GameService svc;
    std::vector<std::thread> workers;
    std::atomic<int> failures{0};
    for (int w = 0; w < 4; ++w) {
      workers.emplace_back([&] {
        for (int i = 0; i < 20; ++i) {
          try {
            const std::string id =
                svc.create_game({{"p", 2}, {"m", 1}, {"a", 30}, {"b", 40}, {"engineSide", "second"}}).at("id");
            json g = svc.get_game(id);
            while (g.at("status") == "ongoing") {
              const json a = svc.get_analysis(id);
              g = svc.post_move(id, a.at("legalMoves")[0]);
            }
          } catch (...) {
            ++failures;
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    CHECK(failures == 0);
  }

  TEST_CASE("http round trip") {
    GameService svc;
    httplib::Server server;
    imnim::service::mount(server, svc);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto res = client.Post("/api/games", R"({"p":1,"m":1,"a":2,"b":3,"engineSide":"second"})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    const std::string id = json::parse(res->body).at("id");

    res = client.Post("/api/games/" + id + "/moves", R"({"pile":0,"amount":1})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    const json after = json::parse(res->body);
    CHECK(after.at("moves").size() == 2);
    CHECK(after.at("moves")[1].at("imitation") == false);

    res = client.Get("/api/games/" + id);
    REQUIRE(res);
    CHECK(json::parse(res->body).at("moves") == after.at("moves"));

    res = client.Get("/api/games/" + id + "/analysis");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body).contains("verdict"));

    res = client.Get("/api/games/zzz");
    REQUIRE(res);
    CHECK(res->status == 404);
    CHECK(json::parse(res->body) == json{{"code", "unknown_session"}, {"message", "no game with id zzz"}});

    res = client.Post("/api/games", "{not json", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    CHECK(json::parse(res->body).at("code") == "invalid_params");

    res = client.Post("/api/games/" + id + "/moves", R"({"pile":1,"amount":99})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    CHECK(json::parse(res->body).at("code") == "illegal_amount");

    server.stop();
    thread.join();
  }
}
