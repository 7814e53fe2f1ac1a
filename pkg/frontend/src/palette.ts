/** Class palette: id -> display color/name, plus the active brush class. */

export interface PaletteEntry {
  classId: number;
  color: string;
  name: string;
}

const BASE_COLORS = [
  "#e6194b", "#3cb44b", "#ffe119", "#0082c8",
  "#f58231", "#911eb4", "#46f0f0", "#f032e6",
];

export class ClassPalette {
  private entries: PaletteEntry[] = [];
  private active = 1;

  constructor(initialClasses = 2) {
    for (let i = 0; i < initialClasses; i++) this.addClass();
  }

  addClass(name?: string): PaletteEntry {
    const classId = this.entries.length + 1;
    const entry = {
      classId,
      color: BASE_COLORS[(classId - 1) % BASE_COLORS.length],
      name: name ?? `class ${classId}`,
    };
    this.entries.push(entry);
    return entry;
  }

  get all(): readonly PaletteEntry[] {
    return this.entries;
  }

  get activeClass(): number {
    return this.active;
  }

  setActive(classId: number): void {
    if (!this.entries.some((e) => e.classId === classId)) {
      throw new Error(`unknown class ${classId}`);
    }
    this.active = classId;
  }

  colorOf(classId: number): string {
    const entry = this.entries.find((e) => e.classId === classId);
    return entry ? entry.color : BASE_COLORS[(classId - 1) % BASE_COLORS.length];
  }
}
