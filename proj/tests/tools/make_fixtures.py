#!/usr/bin/env python3
"""Regenerates tests/fixtures from the reference document.

Grid blocks and the worked prompt example are copied verbatim. The 16
system prompts are assembled here from the template and its fragments,
independently of the C++ prompt builder.

usage: make_fixtures.py REFERENCE.md FIXTURE_DIR
"""
import itertools
import pathlib
import re
import sys

GRID_NAMES = ["figure", "random_p052", "vertical_skew", "horizontal_skew", "cluster", "spiral"]


def grid_blocks(text):
    return re.findall(r"\\begin\{verbatim\}\n(.*?)\\end\{verbatim\}", text, re.S)


def listings(text):
    return re.findall(r"\\begin\{lstlisting\}\n(.*?)\n\\end\{lstlisting\}", text, re.S)


def system_template(text):
    return listings(text)[0]


def fragment(text, name):
    pattern = r"the " + name.replace("_", r"\\_") + r" is `(.*?)'"
    return re.search(pattern, text).group(1)


def main():
    src = pathlib.Path(sys.argv[1]).read_text()
    out = pathlib.Path(sys.argv[2])

    blocks = grid_blocks(src)
    assert len(blocks) == len(GRID_NAMES), len(blocks)
    for name, block in zip(GRID_NAMES, blocks):
        (out / "grids" / f"{name}.txt").write_text(block)

    system, user = listings(src)[2:4]
    (out / "prompts" / "worked_system.txt").write_text(system)
    (out / "prompts" / "worked_user.txt").write_text(user.replace("\\n", "\n"))

    template = system_template(src)
    obstacle = fragment(src, "obstacle_prompt")
    mu1, mu2 = re.findall(r"the movement\\_prompt is `(.*?)'", src)
    limit = fragment(src, "energy_limit_prompt")
    # The worked example runs "DROP.Each step costs" together, so the cost
    # fragment is used without its leading space.
    cost = fragment(src, "cost_of_step_prompt").lstrip(" ")

    for obs, move, lim, c in itertools.product([0, 1], ["mu1", "mu2"], [0, 2], ["0", "0.3"]):
        text = (template.replace("{obstacle_prompt}", obstacle if obs else "")
                .replace("{movement_prompt}", mu1 if move == "mu1" else mu2)
                .replace("{energy_limit_prompt}", limit if lim else "")
                .replace("{cost_of_step_prompt}", cost if c != "0" else ""))
        (out / "prompts" / f"system_obs{obs}_{move}_lim{lim}_cost{c}.txt").write_text(text)


if __name__ == "__main__":
    main()
