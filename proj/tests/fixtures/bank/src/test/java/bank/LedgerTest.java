package bank;

import static org.junit.jupiter.api.Assertions.assertEquals;
import static org.junit.jupiter.api.Assertions.assertNull;

import org.junit.jupiter.api.Test;

class LedgerTest {
    @Test
    void emptyLedgerHasNoLastEntry() {
        Ledger ledger = new Ledger();
        assertNull(ledger.last());
        assertEquals(0, ledger.size());
    }

    @Test
    void recordsAreAppended() {
        Ledger ledger = new Ledger();
        ledger.record("a", "b", 3);
        assertEquals("a->b:3", ledger.last());
    }
}
