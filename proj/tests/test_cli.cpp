// End-to-end tests for the geocolumn command line tool. The binary path
// arrives as a compile definition; every case shells out to a fresh process.

#include <geocolumn/geometry.hpp>
#include <geocolumn/reader.hpp>
#include <geocolumn/wkt.hpp>

#include <doctest.h>
#include <json.hpp>

#include "support.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace geocolumn;
namespace ts = testsupport;

namespace {

struct RunResult {
	int status = -1;
	std::string output;
};

RunResult run_cmd(const std::string &cmd) {
	FILE *pipe = popen(cmd.c_str(), "r");
	REQUIRE(pipe != nullptr);
	RunResult r;
	char buf[4096];
	size_t n;
	while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) {
		r.output.append(buf, n);
	}
	int rc = pclose(pipe);
	r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
	return r;
}

// Merged stdout and stderr.
RunResult cli(const std::string &args) {
	return run_cmd(std::string(GEOCOLUMN_CLI_PATH) + " " + args + " 2>&1");
}

// Stdout only, for output that must parse.
RunResult cli_stdout(const std::string &args) {
	return run_cmd(std::string(GEOCOLUMN_CLI_PATH) + " " + args + " 2>/dev/null");
}

void write_text(const std::string &path, const std::string &text) {
	std::ofstream out(path, std::ios::trunc);
	REQUIRE(out);
	out << text;
}

bool contains(const std::string &haystack, const std::string &needle) {
	return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("--version prints the writer string") {
	RunResult r = cli("--version");
	CHECK(r.status == 0);
	CHECK(r.output == "geocolumn 1.0.0\n");
}

TEST_CASE("a subcommand is required") {
	CHECK(cli("").status != 0);
}

TEST_CASE("convert round trips through every format") {
	ts::TempDir dir;
	std::string wkt_in = dir.file("in.wkt");
	write_text(wkt_in, "POINT (1 2)\n"
	                   "POLYGON ((0 0, 4 0, 4 4, 0 4, 0 0))\n"
	                   "MULTIPOINT ((1 3), (2 4))\n"
	                   "POINT EMPTY\n");
	std::vector<Geometry> original = read_wkt_file(wkt_in);
	REQUIRE(original.size() == 4);

	std::string spqf = dir.file("a.spqf");
	RunResult r = cli("convert " + wkt_in + " " + spqf + " --ids");
	CHECK(r.status == 0);
	CHECK(contains(r.output, "records 4"));
	CHECK(contains(r.output, "column bytes:"));
	CHECK(contains(r.output, " id "));

	{
		FileReader reader(spqf);
		CHECK(reader.record_count() == 4);
		CHECK(reader.footer().has_ids);
	}

	std::string geojson = dir.file("b.geojson");
	r = cli("convert " + spqf + " " + geojson);
	CHECK(r.status == 0);
	std::ifstream gj(geojson);
	std::string first_bytes(40, '\0');
	gj.read(first_bytes.data(), 40);
	CHECK(first_bytes.substr(0, 40) == "{\"type\":\"FeatureCollection\",\"features\":[");

	std::string wkt_out = dir.file("c.wkt");
	r = cli("convert " + geojson + " " + wkt_out);
	CHECK(r.status == 0);

	std::vector<Geometry> final_records = read_wkt_file(wkt_out);
	REQUIRE(final_records.size() == 4);
	for (size_t i = 0; i < 4; ++i) {
		CHECK(final_records[i] == normalize_orientation(original[i]));
	}
}

TEST_CASE("query prints wkt lines and a json document") {
	ts::TempDir dir;
	std::string wkt_in = dir.file("in.wkt");
	write_text(wkt_in, "POINT (1 2)\n"
	                   "POINT (50 50)\n"
	                   "POINT (2 1)\n");
	std::string spqf = dir.file("q.spqf");
	REQUIRE(cli("convert " + wkt_in + " " + spqf + " --ids").status == 0);

	RunResult text = cli_stdout("query " + spqf + " --rect 0,0,10,10");
	CHECK(text.status == 0);
	CHECK(text.output == "POINT (1 2)\nPOINT (2 1)\n");

	RunResult merged = cli("query " + spqf + " --rect 0,0,10,10");
	CHECK(contains(merged.output, "matched 2"));

	RunResult json_run = cli_stdout("query " + spqf + " --rect 0,0,10,10 --format json");
	CHECK(json_run.status == 0);
	nlohmann::json doc = nlohmann::json::parse(json_run.output);
	CHECK(doc["type"] == "FeatureCollection");
	REQUIRE(doc["features"].size() == 2);
	CHECK(doc["features"][0]["id"] == 0);
	CHECK(doc["features"][1]["id"] == 2);
	CHECK(doc["features"][0]["geometry"]["type"] == "Point");
	CHECK(doc["stats"]["records_matched"] == 2);
	CHECK(doc["stats"]["pages_total"].is_number_unsigned());
}

TEST_CASE("query rejects an inverted rectangle") {
	ts::TempDir dir;
	std::string wkt_in = dir.file("in.wkt");
	write_text(wkt_in, "POINT (1 2)\n");
	std::string spqf = dir.file("r.spqf");
	REQUIRE(cli("convert " + wkt_in + " " + spqf).status == 0);

	RunResult r = cli("query " + spqf + " --rect 5,0,1,10");
	CHECK(r.status != 0);
	CHECK(contains(r.output, "--rect"));
}

TEST_CASE("a missing file is a clean error, not a crash") {
	RunResult r = cli("query /nonexistent/nope.spqf --rect 0,0,1,1");
	CHECK(r.status == 1);
	CHECK(contains(r.output, "geocolumn:"));

	r = cli("inspect /nonexistent/nope.spqf");
	CHECK(r.status == 1);
	CHECK(contains(r.output, "geocolumn:"));
}

TEST_CASE("an unknown extension needs an explicit format flag") {
	ts::TempDir dir;
	std::string odd = dir.file("data.xyz");
	write_text(odd, "POINT (1 2)\n");
	std::string spqf = dir.file("o.spqf");

	RunResult r = cli("convert " + odd + " " + spqf);
	CHECK(r.status != 0);
	CHECK(contains(r.output, "--from"));

	r = cli("convert " + odd + " " + spqf + " --from wkt");
	CHECK(r.status == 0);
	CHECK(contains(r.output, "records 1"));
}

TEST_CASE("invalid geometries abort unless asked to skip") {
	ts::TempDir dir;
	std::string wkt_in = dir.file("in.wkt");
	write_text(wkt_in, "POINT (0 0)\n"
	                   "LINESTRING (5 5)\n"
	                   "POINT (1 1)\n");
	std::string spqf = dir.file("s.spqf");

	RunResult r = cli("convert " + wkt_in + " " + spqf);
	CHECK(r.status == 1);
	CHECK(contains(r.output, "geocolumn:"));

	r = cli("convert " + wkt_in + " " + spqf + " --skip-invalid");
	CHECK(r.status == 0);
	CHECK(contains(r.output, "records 2 (1 invalid skipped)"));

	auto records = FileReader(spqf).read_all();
	REQUIRE(records.size() == 2);
	CHECK(records[1] == Geometry(Point {{1, 1}}));
}

TEST_CASE("convert applies the requested layout options") {
	ts::TempDir dir;
	std::string wkt_in = dir.file("in.wkt");
	std::string body;
	for (int i = 0; i < 400; ++i) {
		body += "POINT (" + std::to_string(i % 20) + " " + std::to_string(i / 20) + ")\n";
	}
	write_text(wkt_in, body);
	std::string spqf = dir.file("layout.spqf");

	RunResult r = cli("convert " + wkt_in + " " + spqf +
	                  " --sort hilbert --compression deflate --page-size 4096 --batch-size 100");
	CHECK(r.status == 0);

	FileReader reader(spqf);
	CHECK(reader.footer().sort == uint8_t(SortCurve::Hilbert));
	CHECK(reader.footer().compression == uint8_t(Compression::Deflate));
	CHECK(reader.footer().page_size == 4096);
	CHECK(reader.footer().row_groups.size() == 4);
	CHECK(reader.record_count() == 400);
}

TEST_CASE("inspect emits both report formats") {
	ts::TempDir dir;
	std::string wkt_in = dir.file("in.wkt");
	write_text(wkt_in, "POINT (1 2)\nPOINT (3 4)\n");
	std::string spqf = dir.file("i.spqf");
	REQUIRE(cli("convert " + wkt_in + " " + spqf).status == 0);

	RunResult text = cli_stdout("inspect " + spqf);
	CHECK(text.status == 0);
	CHECK(contains(text.output, "file: " + spqf));
	CHECK(contains(text.output, "2 records"));

	RunResult json_run = cli_stdout("inspect " + spqf + " --format json");
	CHECK(json_run.status == 0);
	nlohmann::json doc = nlohmann::json::parse(json_run.output);
	CHECK(doc["record_count"] == 2);
	CHECK(doc["writer"] == "geocolumn 1.0.0");
}

TEST_CASE("bench reports its full option matrix") {
	RunResult r = run_cmd("GEOCOLUMN_LOG=info " + std::string(GEOCOLUMN_CLI_PATH) +
	                      " bench --count 150 --clusters 3 --seed 5 --format json 2>&1");
	CHECK(r.status == 0);
	CHECK(contains(r.output, "geocolumn: benchmarking 150 records"));

	// The log line went to stderr; the json document starts at the brace.
	auto brace = r.output.find('{');
	REQUIRE(brace != std::string::npos);
	nlohmann::json doc = nlohmann::json::parse(r.output.substr(brace));
	CHECK(doc["records"] == 150);
	CHECK(doc["shuffled"] == true);
	REQUIRE(doc["rows"].size() == 12);
	for (const auto &row : doc["rows"]) {
		CHECK(row["file_bytes"].get<uint64_t>() > 0);
		CHECK(row["coord_bytes"].get<uint64_t>() > 0);
	}
}

TEST_SUITE_END();
