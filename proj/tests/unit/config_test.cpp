#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "biortho/config.hpp"

using namespace biortho;

TEST(Settings, DefaultsRoundTripThroughNames) {
    Settings s;
    for (const auto& key : setting_names()) {
        const std::string v = setting_value(s, key);
        EXPECT_NO_THROW(apply_setting(s, key, v)) << key;
        EXPECT_EQ(setting_value(s, key), v);
    }
    EXPECT_EQ(setting_value(s, "tol.identity"), "1e-10");
    EXPECT_EQ(setting_value(s, "grid.monotone"), "2000");
}

TEST(Settings, ApplyAndReject) {
    Settings s;
    apply_setting(s, "tol.fd", "2.5e-6");
    EXPECT_EQ(s.tol_fd, 2.5e-6);
    apply_setting(s, "grid.claim", "123");
    EXPECT_EQ(s.grid_claim, 123);
    EXPECT_THROW(apply_setting(s, "tol.nope", "1"), ConfigError);
    EXPECT_THROW(apply_setting(s, "tol.fd", "-1"), ConfigError);
    EXPECT_THROW(apply_setting(s, "tol.fd", "abc"), ConfigError);
    EXPECT_THROW(apply_setting(s, "grid.claim", "1.5"), ConfigError);
    EXPECT_THROW(apply_setting(s, "grid.claim", "0"), ConfigError);
}

TEST(ConfigText, ParsesCommentsAndWhitespace) {
    const auto kv = parse_config_text("# header\n tol.fd = 1e-6  # inline\n\ngrid.modulus=50\n");
    ASSERT_EQ(kv.size(), 2U);
    EXPECT_EQ(kv.at("tol.fd"), "1e-6");
    EXPECT_EQ(kv.at("grid.modulus"), "50");
    EXPECT_THROW(parse_config_text("just words\n"), ConfigError);
    EXPECT_THROW(parse_config_text("key =\n"), ConfigError);
}

TEST(ConfigFile, ReadsAndReportsMissing) {
    const std::string path = ::testing::TempDir() + "biortho_cfg_test.conf";
    {
        std::ofstream f(path);
        f << "tol.claim = 1e-8\n";
    }
    EXPECT_EQ(read_config_file(path).at("tol.claim"), "1e-8");
    std::remove(path.c_str());
    EXPECT_THROW(read_config_file(path), ConfigError);
}
