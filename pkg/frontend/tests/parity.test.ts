import { describe, expect, it } from "vitest";

import { checkMove } from "../src/legality.js";
import { loadParityFixture, positionOfCase } from "./helpers.js";

describe("legality mirror vs recorded server verdicts", () => {
  const fixture = loadParityFixture();

  it("covers at least ten thousand fuzzed submissions", () => {
    expect(fixture.cases.length).toBeGreaterThanOrEqual(10000);
    expect(fixture.meta.cases).toBe(fixture.cases.length);
    expect(fixture.meta.accepted).toBeGreaterThan(1000);
    expect(fixture.meta.rejected).toBeGreaterThan(1000);
  });

  it("spans all bias families and both human roles", () => {
    const families = new Set(fixture.cases.map((c) => c.bias.family));
    const roles = new Set(fixture.cases.map((c) => c.humanRole));
    expect(families).toEqual(new Set(["clique", "matching", "star", "free"]));
    expect(roles).toEqual(new Set(["M", "B"]));
  });

  it("never accepts a submission the server rejected", () => {
    const falseAccepts: string[] = [];
    const falseRejects: string[] = [];
    let accepted = 0;
    for (const [i, c] of fixture.cases.entries()) {
      const verdict = checkMove(positionOfCase(c), c.edges);
      if (verdict.ok) accepted++;
      if (verdict.ok && !c.serverOk) {
        falseAccepts.push(
          `case ${i}: client ok, server ${c.serverCode} (${c.serverReason}) ` +
            `for ${JSON.stringify(c.edges)} on ${c.bias.family}/${c.bias.size}`,
        );
      }
      if (!verdict.ok && c.serverOk) {
        falseRejects.push(
          `case ${i}: client said "${verdict.reason}" but server accepted ` +
            `${JSON.stringify(c.edges)} on ${c.bias.family}/${c.bias.size}`,
        );
      }
    }
    expect(falseAccepts, falseAccepts.slice(0, 5).join("\n")).toHaveLength(0);
    expect(falseRejects, falseRejects.slice(0, 5).join("\n")).toHaveLength(0);
    expect(accepted).toBe(fixture.meta.accepted);
  });

  it("agrees on every finished-session probe", () => {
    const finished = fixture.cases.filter((c) => c.status === "finished");
    expect(finished.length).toBeGreaterThan(50);
    for (const c of finished) {
      expect(checkMove(positionOfCase(c), c.edges).ok).toBe(false);
      expect(c.serverOk).toBe(false);
      expect(c.serverCode).toBe("session-finished");
    }
  });
});
