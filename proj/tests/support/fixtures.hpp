/*
 * Copyright 2026 The glass authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

namespace fixtures {

/// Scratch directory removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("glass_test_" + tag + "_" + std::to_string(counter.fetch_add(1)) + "_" +
                 std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

    std::string file(const std::string& name, const std::string& content) const {
        const std::filesystem::path p = path_ / name;
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        return p.string();
    }

    std::string subpath(const std::string& name) const { return (path_ / name).string(); }

  private:
    std::filesystem::path path_;
};

/// A small synthetic congress used across the roll-call tests.
///
/// Congress 99, 6 members:
///   101 dem leader, 102 rep leader, 103/104 rank-and-file Democrats,
///   105/106 rank-and-file Republicans, 107 Independent (party 328).
/// Roll calls 1..4, all dated; leaders agree on roll 3 (both yea).
struct MiniCongress {
    std::string members_csv =
        "congress,chamber,icpsr,party_code,bioname\n"
        "99,House,101,100,\"ALPHA, Ada\"\n"
        "99,House,102,200,\"BRAVO, Bob\"\n"
        "99,House,103,100,\"CHARLIE, Cal\"\n"
        "99,House,104,100,\"DELTA, Dan\"\n"
        "99,House,105,200,\"ECHO, Eve\"\n"
        "99,House,106,200,\"FOXTROT, Fay\"\n"
        "99,House,107,328,\"GOLF, Gil\"\n";

    // cast codes: 1 yea, 6 nay, 9 not voting (removed by rule 1)
    std::string votes_csv =
        "congress,chamber,rollnumber,icpsr,cast_code\n"
        // roll 1: leaders split, dems yea, reps nay
        "99,House,1,101,1\n99,House,1,102,6\n99,House,1,103,1\n99,House,1,104,1\n"
        "99,House,1,105,6\n99,House,1,106,6\n99,House,1,107,1\n"
        // roll 2: leaders split the other way; 104 crosses over
        "99,House,2,101,6\n99,House,2,102,1\n99,House,2,103,6\n99,House,2,104,1\n"
        "99,House,2,105,1\n99,House,2,106,1\n99,House,2,107,9\n"
        // roll 3: leaders agree (both yea) -> dropped by rule 5
        "99,House,3,101,1\n99,House,3,102,1\n99,House,3,103,1\n99,House,3,104,1\n"
        "99,House,3,105,1\n99,House,3,106,6\n"
        // roll 4: leaders split, mixed votes, 107 not voting
        "99,House,4,101,1\n99,House,4,102,6\n99,House,4,103,1\n99,House,4,104,6\n"
        "99,House,4,105,6\n99,House,4,106,1\n99,House,4,107,9\n";

    std::string rollcalls_csv =
        "congress,chamber,rollnumber,date\n"
        "99,House,1,1985-02-01\n"
        "99,House,2,1985-06-15\n"
        "99,House,3,1986-03-10\n"
        "99,House,4,1986-09-20\n";

    std::string leaders_csv =
        "congress,chamber,member_id,party,role,start_date,end_date,name\n"
        "99,house,101,D,leader,,,\n"
        "99,house,,R,leader,,,\"BRAVO, Bob\"\n";
};

}  // namespace fixtures
