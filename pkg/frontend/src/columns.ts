// Column configuration: one column per knowledge type, hideable and
// reorderable. Visible columns always occupy positions 0..k-1.

export interface ColumnConfig {
  typeId: string;
  visible: boolean;
  position: number;
}

export class ColumnLayout {
  private columns: ColumnConfig[] = [];

  constructor(typeIds: string[]) {
    this.columns = typeIds.map((typeId, i) => ({ typeId, visible: true, position: i }));
  }

  all(): ColumnConfig[] {
    return this.columns.map((c) => ({ ...c }));
  }

  visibleOrder(): string[] {
    return this.columns
      .filter((c) => c.visible)
      .sort((a, b) => a.position - b.position)
      .map((c) => c.typeId);
  }

  hiddenTypes(): string[] {
    return this.columns.filter((c) => !c.visible).map((c) => c.typeId);
  }

  private column(typeId: string): ColumnConfig {
    const col = this.columns.find((c) => c.typeId === typeId);
    if (!col) {
      throw new Error(`unknown column ${typeId}`);
    }
    return col;
  }

  private renumber(): void {
    this.columns
      .filter((c) => c.visible)
      .sort((a, b) => a.position - b.position)
      .forEach((c, i) => {
        c.position = i;
      });
  }

  hide(typeId: string): void {
    this.column(typeId).visible = false;
    this.renumber();
  }

  show(typeId: string): void {
    const col = this.column(typeId);
    if (!col.visible) {
      col.visible = true;
      col.position = this.columns.filter((c) => c.visible).length - 1;
      this.renumber();
    }
  }

  // Move a visible column so it lands at the target visible position.
  move(typeId: string, position: number): void {
    const order = this.visibleOrder().filter((t) => t !== typeId);
    const clamped = Math.max(0, Math.min(position, order.length));
    order.splice(clamped, 0, typeId);
    order.forEach((t, i) => {
      this.column(t).position = i;
    });
  }
}
