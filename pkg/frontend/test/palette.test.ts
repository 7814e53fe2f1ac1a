import { describe, expect, it } from "vitest";
import { ClassPalette } from "../src/palette.js";

describe("ClassPalette", () => {
  it("starts with the requested classes and class 1 active", () => {
    const p = new ClassPalette(2);
    expect(p.all.map((e) => e.classId)).toEqual([1, 2]);
    expect(p.activeClass).toBe(1);
  });

  it("assigns distinct colors to the first eight classes", () => {
    const p = new ClassPalette(8);
    const colors = new Set(p.all.map((e) => e.color));
    expect(colors.size).toBe(8);
  });

  it("setActive switches the brush class and validates the id", () => {
    const p = new ClassPalette(3);
    p.setActive(3);
    expect(p.activeClass).toBe(3);
    expect(() => p.setActive(9)).toThrow(/unknown class/);
  });

  it("colorOf is stable for known and wrapped ids", () => {
    const p = new ClassPalette(2);
    expect(p.colorOf(1)).toBe(p.all[0].color);
    expect(p.colorOf(9)).toBe(p.colorOf(1));
  });
});
