// Session-local view state. The stack order and filter here never touch
// the journal: pulling a wave to the baseline or hiding it only changes
// what the next layout request asks for.

export interface SessionConfig {
  order: string[];
  visible: Set<string>;
  smooth: boolean;
}

export const MIN_POLL_INTERVAL_MS = 1000;
export const DEFAULT_POLL_INTERVAL_MS = 2000;

export class ViewState {
  selectedDate: string;
  config: SessionConfig;
  pollIntervalMs: number;
  /** activities whose toggle is in flight, awaiting acknowledgement */
  pendingToggles = new Set<string>();
  private layoutSeq = 0;

  constructor(selectedDate: string, order: string[], pollIntervalMs?: number) {
    this.selectedDate = selectedDate;
    this.config = { order: [...order], visible: new Set(order), smooth: true };
    this.pollIntervalMs = Math.max(
      MIN_POLL_INTERVAL_MS,
      pollIntervalMs ?? DEFAULT_POLL_INTERVAL_MS,
    );
  }

  /** Move one activity to stack index 0, preserving the rest. Idempotent. */
  pullToBaseline(activity: string): void {
    if (!this.config.order.includes(activity)) return;
    this.config.order = [
      activity,
      ...this.config.order.filter((a) => a !== activity),
    ];
  }

  setVisible(activity: string, shown: boolean): void {
    if (!this.config.order.includes(activity)) return;
    if (shown) {
      this.config.visible.add(activity);
    } else {
      this.config.visible.delete(activity);
    }
  }

  visibleInOrder(): string[] {
    return this.config.order.filter((a) => this.config.visible.has(a));
  }

  /** Fold the stored activity order into the session stack: drop vanished
   * ids, append newcomers (visible by default), keep session ordering. */
  adoptStoredOrder(order: string[]): void {
    const known = new Set(order);
    const fresh = order.filter((a) => !this.config.order.includes(a));
    this.config.order = [
      ...this.config.order.filter((a) => known.has(a)),
      ...fresh,
    ];
    for (const shown of [...this.config.visible]) {
      if (!known.has(shown)) this.config.visible.delete(shown);
    }
    for (const a of fresh) this.config.visible.add(a);
  }

  /** Sequence number for the next layout fetch (last-issued-wins). */
  nextSeq(): number {
    return ++this.layoutSeq;
  }

  /** A response applies only if no newer request has been issued since. */
  acceptSeq(seq: number): boolean {
    return seq === this.layoutSeq;
  }
}
