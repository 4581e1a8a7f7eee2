package bank;

import java.util.ArrayList;
import java.util.List;

public class Ledger {
    private final List<String> entries = new ArrayList<>();

    public void record(String from, String to, long amount) {
        entries.add(from + "->" + to + ":" + amount);
    }

    public int size() {
        return entries.size();
    }

    public String last() {
        if (entries.isEmpty()) {
            return null;
        }
        return entries.get(entries.size() - 1);
    }
}
