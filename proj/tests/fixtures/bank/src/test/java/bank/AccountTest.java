package bank;

import static org.junit.jupiter.api.Assertions.assertEquals;
import static org.junit.jupiter.api.Assertions.assertFalse;
import static org.junit.jupiter.api.Assertions.assertThrows;

import org.junit.jupiter.api.Test;

class AccountTest {
    @Test
    void depositIncreasesBalance() {
        Account account = new Account("a", 10);
        account.deposit(5);
        assertEquals(15, account.getBalance());
        assertEquals(1, account.getOperations());
    }

    @Test
    void withdrawBeyondBalanceIsRefused() {
        Account account = new Account("a", 10);
        assertFalse(account.withdraw(11));
        assertEquals(10, account.getBalance());
    }

    @Test
    void nonPositiveAmountsAreRejected() {
        Account account = new Account("a", 10);
        assertThrows(IllegalArgumentException.class, () -> account.deposit(0));
    }
}
