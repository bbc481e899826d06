// Change-event polling with a cursor; one request in flight at a time.

import type { ApiClient } from "./api.js";

export class EventPoller {
  private since = 0;
  private inFlight = false;

  constructor(
    private readonly api: ApiClient,
    private readonly onChanges: () => void | Promise<void>,
  ) {}

  /** Polls once; resolves true when new events arrived. */
  async poll(): Promise<boolean> {
    if (this.inFlight) {
      return false;
    }
    this.inFlight = true;
    try {
      const events = await this.api.events(this.since);
      if (events.length === 0) {
        return false;
      }
      this.since = events[events.length - 1].seqNo;
      await this.onChanges();
      return true;
    } finally {
      this.inFlight = false;
    }
  }
}
