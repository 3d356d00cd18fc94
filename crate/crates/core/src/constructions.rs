//! Hand-built machines. Every factory returns a validated, real-time
//! machine.

use crate::machine::{Machine, MachineBuilder};

/// Names accepted by [`builtin`].
pub const BUILTINS: &[&str] = &["expo", "fib", "cub", "trie-p", "trie-p-hat", "mi-hat"];

pub fn builtin(name: &str) -> Option<Machine> {
    match name {
        "expo" => Some(build_expo()),
        "fib" => Some(build_fib()),
        "cub" => Some(build_cub()),
        "trie-p" => Some(build_trie_p()),
        "trie-p-hat" => Some(build_trie_p_hat()),
        "mi-hat" => Some(build_mi_hat()),
        _ => None,
    }
}

fn finish(b: MachineBuilder, what: &str) -> Machine {
    b.build().unwrap_or_else(|e| panic!("{what}: {e}")).validated().unwrap_or_else(|e| panic!("{what}: {e}"))
}

/// Adds `from_0 -> from_1 -> ... -> to`, one stay per symbol read, with
/// the pointer parked at the root.
fn root_delay(b: &mut MachineBuilder, states: &[&str], to: &str) {
    for (i, s) in states.iter().enumerate() {
        let next = states.get(i + 1).copied().unwrap_or(to);
        b.rule(&format!("{s} a (-,*,*) ROOT -> {next} stay"));
    }
}

/// Words `a^(2^n)`. Grows complete binary trees one level per phase; the
/// input length is accepted exactly when it ends at a phase boundary,
/// apart from the short lengths 1, 2, 4 and 8.
pub fn build_expo() -> Machine {
    let mut b = MachineBuilder::with_alphabets(&["a"], &["dot"]);
    b.start("init_0").accept("accept").real_time(true).non_erasing(true);
    // 8 initial moves, then 4 more before every phase.
    root_delay(&mut b, &["init_0", "init_1", "init_2", "init_3", "init_4", "init_5", "init_6", "init_7"], "q_d");
    root_delay(&mut b, &["q_d", "wait_1", "wait_2", "wait_3"], "q_l");
    for s in ["init_1", "init_2", "init_4"] {
        b.rule(&format!("{s} END (-,-,-) ROOT -> accept stay"));
    }
    // q_d at the root marks the end of a phase.
    b.rule("q_d END (-,*,*) ROOT -> accept stay");

    b.rule("q_l a (*,+,*) * -> q_l down-l")
        .rule("q_l a (*,-,-) * -> q_p push dot l")
        .rule("q_p a (l,-,-) * -> q_r up")
        .rule("q_r a (*,+,-) * -> q_p push dot r")
        .rule("q_p a (r,-,-) * -> q_d up")
        .rule("q_d a (l,*,*) * -> q_r up")
        .rule("q_d a (r,*,*) * -> q_d up")
        .rule("q_r a (*,+,+) * -> q_l down-r");
    finish(b, "expo")
}

/// Words `a^(2n)` with `n` a Fibonacci number. Grows Fibonacci trees one
/// level per phase.
pub fn build_fib() -> Machine {
    let mut b = MachineBuilder::with_alphabets(&["a"], &["dot"]);
    b.start("init_0").accept("accept").real_time(true).non_erasing(true);
    root_delay(&mut b, &["init_0", "init_1", "init_2", "init_3", "init_4", "init_5"], "pre_0");
    // 4 moves before the first phase and after each one.
    root_delay(&mut b, &["pre_0", "delay_1", "delay_2", "delay_3"], "q_l");
    b.rule("q_d a (-,*,*) ROOT -> delay_1 stay");
    for s in ["init_2", "init_4", "pre_0"] {
        b.rule(&format!("{s} END (-,-,-) ROOT -> accept stay"));
    }
    // q_l sits at the root only when a phase is about to start.
    b.rule("q_l END (-,*,*) ROOT -> accept stay");

    b.rule("q_l a (*,+,*) * -> q_l down-l")
        .rule("q_l a (*,-,-) * -> q_p push dot l")
        .rule("q_p a (*,*,*) * -> q_d up")
        .rule("q_d a (l,*,*) * -> q_r up")
        .rule("q_d a (r,*,*) * -> q_d up")
        .rule("q_r a (*,+,-) * -> q_p push dot r")
        .rule("q_r a (*,+,+) * -> q_l down-r");
    finish(b, "fib")
}

/// Words `a^(n^3)`.
///
/// The tree after the phase ending at length `n^3` is a left spine
/// `v_1 .. v_n` below the root where `v_i` carries a right chain of
/// `n - i` teeth. One phase visits every spine node (1 stay at `v_1`,
/// 2 at the others), walks each tooth chain (1 down plus 4 stays per
/// tooth), extends it by one tooth, walks back, and finally appends
/// `v_(n+1)` and climbs to the root. That costs `3n^2 + 3n + 1` moves.
pub fn build_cub() -> Machine {
    let mut b = MachineBuilder::with_alphabets(&["a"], &["head", "spine", "tooth"]);
    b.start("init_0").accept("accept").real_time(true).non_erasing(true);
    // The first 8 moves build the tree for n = 2.
    b.rule("init_0 a (*,*,*) * -> init_1 push head l")
        .rule("init_1 a (*,*,*) * -> init_2 push tooth r")
        .rule("init_2 a (*,*,*) * -> init_3 up")
        .rule("init_3 a (*,*,*) * -> init_4 push spine l")
        .rule("init_4 a (*,*,*) * -> init_5 up")
        .rule("init_5 a (*,*,*) * -> init_6 up")
        .rule("init_6 a (*,*,*) * -> init_7 stay")
        .rule("init_7 a (*,*,*) * -> climb stay")
        .rule("init_0 END (*,*,*) * -> accept stay")
        .rule("init_1 END (*,*,*) * -> accept stay")
        .rule("climb END (-,*,*) ROOT -> accept stay");

    b.rule("climb a (-,*,*) ROOT -> spine_arrive down-l")
        .rule("climb a (l,*,*) * -> climb up")
        .rule("spine_arrive a (*,*,*) head -> tooth_go stay")
        .rule("spine_arrive a (*,*,*) spine -> spine_wait stay")
        .rule("spine_wait a (*,*,*) * -> tooth_go stay")
        .rule("tooth_go a (*,*,+) * -> tpad_1 down-r")
        .rule("tpad_1 a (*,*,*) * -> tpad_2 stay")
        .rule("tpad_2 a (*,*,*) * -> tpad_3 stay")
        .rule("tpad_3 a (*,*,*) * -> tpad_4 stay")
        .rule("tpad_4 a (*,*,*) * -> tooth_go stay")
        .rule("tooth_go a (*,*,-) * -> tooth_return push tooth r")
        .rule("tooth_return a (r,*,*) * -> tooth_return up")
        .rule("tooth_return a (l,+,*) * -> spine_arrive down-l")
        .rule("tooth_return a (l,-,*) * -> climb push spine l");
    finish(b, "cub")
}

/// Trie acceptor over `a b $ b0`: `x_1 $^|x_1| ... x_k $^|x_k| b0 y` with
/// no `x_i` a proper prefix of an earlier `x_j` and `y` one of the `x_i`.
pub fn build_trie_p() -> Machine {
    trie_machine(false)
}

/// As [`build_trie_p`] over `a b $ cent b1`, with `cent z` (`z` over
/// `a b $`) inserted before the marker.
pub fn build_trie_p_hat() -> Machine {
    trie_machine(true)
}

// Insertion reads each letter one step late: the letter is remembered in
// `pend_a`/`pend_b` and the tree move for it is made on the following
// symbol. When that symbol is `$` the letter was the last one of the
// word, so a newly pushed node is labeled as an endpoint. Labels also
// record whether a node is a child of the root (`top`), which tells the
// machine when the `$` run has brought it back to depth one.
fn trie_machine(hat: bool) -> Machine {
    let marker = if hat { "b1" } else { "b0" };
    let input: &[&str] = if hat { &["a", "b", "$", "cent", "b1"] } else { &["a", "b", "$", "b0"] };
    let mut b = MachineBuilder::with_alphabets(input, &["plain_top", "plain_deep", "end_top", "end_deep"]);
    b.start("home").accept("accept").real_time(true).non_erasing(true);

    b.rule("home a (-,*,*) ROOT -> pend_a stay").rule("home b (-,*,*) ROOT -> pend_b stay");
    let after_words = if hat { "cent" } else { marker };
    let after_target = if hat { "skim" } else { "match" };
    b.rule(&format!("home {after_words} (-,*,*) ROOT -> {after_target} stay"));

    for (letter, side, child) in [("a", "l", "(*,+,*)"), ("b", "r", "(*,*,+)")] {
        let free = |anc: &str| if side == "l" { format!("({anc},-,*)") } else { format!("({anc},*,-)") };
        let down = format!("down-{side}");
        for next in ["a", "b"] {
            b.rule(&format!("pend_{letter} {next} {child} * -> pend_{next} {down}"))
                .rule(&format!("pend_{letter} {next} {} ROOT -> pend_{next} push plain_top {side}", free("-")));
            for anc in ["l", "r"] {
                b.rule(&format!("pend_{letter} {next} {} * -> pend_{next} push plain_deep {side}", free(anc)));
            }
        }
        b.rule(&format!("pend_{letter} $ {child} * -> landed {down}"))
            .rule(&format!("pend_{letter} $ {} ROOT -> landed push end_top {side}", free("-")));
        for anc in ["l", "r"] {
            b.rule(&format!("pend_{letter} $ {} * -> landed push end_deep {side}", free(anc)));
        }
    }

    // A word must end at a leaf; ending at an inner node means it is a
    // proper prefix of an earlier word.
    for (state, node) in [("landed", "(*,-,-)"), ("climb", "(*,*,*)")] {
        for label in ["plain_deep", "end_deep"] {
            b.rule(&format!("{state} $ {node} {label} -> climb up"));
        }
        for label in ["plain_top", "end_top"] {
            b.rule(&format!("{state} a {node} {label} -> pend_a up"))
                .rule(&format!("{state} b {node} {label} -> pend_b up"))
                .rule(&format!("{state} {after_words} {node} {label} -> {after_target} up"));
        }
    }

    if hat {
        for s in ["a", "b", "$"] {
            b.rule(&format!("skim {s} (-,*,*) ROOT -> skim stay"));
        }
        b.rule(&format!("skim {marker} (-,*,*) ROOT -> match stay"));
    }

    b.rule("match a (*,+,*) * -> match down-l")
        .rule("match b (*,*,+) * -> match down-r")
        .rule("match END (*,*,*) end_top -> accept stay")
        .rule("match END (*,*,*) end_deep -> accept stay");
    finish(b, if hat { "trie-p-hat" } else { "trie-p" })
}

/// Words `x cent v $ v^R b2` with `x` over `a b $` and `v` over `a b`.
/// `v` is pushed as a left spine and popped against `v^R`.
pub fn build_mi_hat() -> Machine {
    let mut b = MachineBuilder::with_alphabets(&["a", "b", "$", "cent", "b2"], &["a", "b"]);
    b.start("skim").accept("accept").real_time(true).non_erasing(false);
    for s in ["a", "b", "$"] {
        b.rule(&format!("skim {s} (-,*,*) ROOT -> skim stay"));
    }
    b.rule("skim cent (-,*,*) ROOT -> push_v stay")
        .rule("push_v a (*,-,*) * -> push_v push a l")
        .rule("push_v b (*,-,*) * -> push_v push b l")
        .rule("push_v $ (*,*,*) * -> pop_v stay")
        .rule("pop_v a (l,-,-) a -> pop_v pop")
        .rule("pop_v b (l,-,-) b -> pop_v pop")
        .rule("pop_v b2 (-,-,-) ROOT -> done stay")
        .rule("done END (-,-,-) ROOT -> accept stay");
    finish(b, "mi-hat")
}
