#include <string>
#include <vector>

#include "eigenscan/catalog.hpp"

namespace eigenscan {

namespace {

std::string underscored(const std::string& name) {
    std::string out = name;
    for (auto& ch : out)
        if (ch == ' ') ch = '_';
    return out;
}

// Permission keywords match the bare constant and the fully qualified form.
// Manifests declare permissions, so that is the only scope searched.
FeatureDefinition permission(const std::string& name,
                             const std::string& qualified_prefix = "android.permission.") {
    FeatureDefinition def;
    def.name = name;
    def.kind = FeatureKind::Permission;
    const std::string constant = underscored(name);
    def.patterns = {constant, qualified_prefix + constant};
    def.scope = Scope::only(DocumentRole::Manifest);
    return def;
}

FeatureDefinition permission_patterns(const std::string& name,
                                      std::vector<std::string> patterns) {
    FeatureDefinition def;
    def.name = name;
    def.kind = FeatureKind::Permission;
    def.patterns = std::move(patterns);
    def.scope = Scope::only(DocumentRole::Manifest);
    return def;
}

// API keywords are mined from the disassembled code dump.
FeatureDefinition api(const std::string& name) {
    FeatureDefinition def;
    def.name = name;
    def.kind = FeatureKind::Api;
    def.patterns = {name};
    def.scope = Scope::only(DocumentRole::CodeDump);
    return def;
}

FeatureDefinition api_patterns(const std::string& name, std::vector<std::string> patterns) {
    FeatureDefinition def;
    def.name = name;
    def.kind = FeatureKind::Api;
    def.patterns = std::move(patterns);
    def.scope = Scope::only(DocumentRole::CodeDump);
    return def;
}

// System-command keywords can hide in embedded files as well as in code.
FeatureDefinition command(const std::string& name) {
    FeatureDefinition def;
    def.name = name;
    def.kind = FeatureKind::CommandRelated;
    def.patterns = {name};
    def.scope = Scope::only(DocumentRole::CodeDump).add(DocumentRole::EmbeddedFiles);
    return def;
}

FeatureDefinition intent_action(const std::string& name, std::vector<std::string> patterns) {
    FeatureDefinition def;
    def.name = name;
    def.kind = FeatureKind::Intent;
    def.patterns = std::move(patterns);
    def.scope = Scope::all();
    return def;
}

FeatureCatalog build_default_catalog() {
    std::vector<FeatureDefinition> e;
    e.reserve(100);

    // Gain-ratio ranking order, ranks 1-50.
    e.push_back(permission("SEND SMS"));
    e.push_back(api("createSubprocess"));
    e.push_back(command("remount"));
    e.push_back(command("/system/bin/sh"));
    e.push_back(command("chown"));
    e.push_back(permission("RECEIVE SMS"));
    e.push_back(command("/system/app"));
    e.push_back(api("abortBroadcast"));
    e.push_back(command("pm install"));
    e.push_back(permission("READ SMS"));
    e.push_back(permission("WRITE SMS"));
    e.push_back(command("mount"));
    e.push_back(permission("FACTORY TEST"));
    e.push_back(permission("WRITE APN SETTINGS"));
    e.push_back(permission("RESTART PACKAGES"));
    e.push_back(permission("CHANGE COMPONENT ENABLED STATE"));
    e.push_back(api("getSubscriberId"));
    e.push_back(permission("BIND REMOTEVIEWS"));
    e.push_back(permission("DISABLE KEYGUARD"));
    e.push_back(permission("CHANGE WIFI STATE"));
    e.push_back(permission("CLEAR APP CACHE"));
    e.push_back(permission("READ PHONE STATE"));
    e.push_back(api("TelephonyManager"));
    e.push_back(api("FindClass"));
    e.push_back(permission("AUTHENTICATE ACCOUNTS"));
    e.push_back(command("chmod"));
    e.push_back(permission("BIND WALLPAPER"));
    e.push_back(permission("BIND ACCESSIBILITY SERVICE"));
    e.push_back(permission("DELETE CACHE FILES"));
    e.push_back(permission("GET PACKAGE SIZE"));
    e.push_back(permission("READ CALL LOG"));
    e.push_back(permission("INSTALL PACKAGES"));
    e.push_back(permission("GET ACCOUNTS"));
    e.push_back(api("SMSReceiver"));
    e.push_back(api_patterns("Ljava net URLDecoder", {"Ljava/net/URLDecoder"}));
    // The table prints this intent keyword lowercase and its sibling
    // capitalized; both casings are matched for both entries.
    e.push_back(intent_action("intent.action.BOOT COMPLETED",
                              {"intent.action.BOOT_COMPLETED", "Intent.action.BOOT_COMPLETED"}));
    e.push_back(permission("GLOBAL SEARCH"));
    e.push_back(permission("MANAGE ACCOUNTS"));
    e.push_back(permission("ACCESS NETWORK STATE"));
    e.push_back(permission("SET ORIENTATION"));
    e.push_back(command("/system/bin"));
    e.push_back(permission("USE CREDENTIALS"));
    e.push_back(permission("RECEIVE WAP PUSH"));
    e.push_back(api("bindService"));
    e.push_back(permission("NFC"));
    e.push_back(permission("RECEIVE MMS"));
    e.push_back(permission("BIND APPWIDGET"));
    e.push_back(api_patterns("Ljavax crypto spec SecretKeySpec", {"Ljavax/crypto/spec/SecretKeySpec"}));
    e.push_back(api("exec"));
    e.push_back(api("getSimSerialNumber"));

    // Ranks 51-100.
    e.push_back(permission("BROADCAST SMS"));
    e.push_back(permission("KILL BACKGROUND PROCESSES"));
    e.push_back(permission("READ SYNC STATS"));
    e.push_back(permission("CAMERA"));
    e.push_back(command("res"));
    e.push_back(api("KeySpec"));
    e.push_back(permission("DELETE PACKAGES"));
    e.push_back(permission("MODIFY PHONE STATE"));
    e.push_back(api_patterns("Ljavax crypto Cipher", {"Ljavax/crypto/Cipher"}));
    e.push_back(permission("WRITE CONTACTS"));
    e.push_back(permission("BIND INPUT METHOD"));
    e.push_back(permission("PROCESS OUTGOING CALLS"));
    e.push_back(permission("SET WALLPAPER HINTS"));
    e.push_back(permission("READ LOGS"));
    e.push_back(permission("CALL PHONE"));
    e.push_back(permission("INTERNAL SYSTEM WINDOW"));
    e.push_back(permission("BLUETOOTH ADMIN"));
    e.push_back(permission("CHANGE WIFI MULTICAST STATE"));
    e.push_back(permission("UPDATE DEVICE STATS"));
    e.push_back(permission("RECEIVE BOOT COMPLETED"));
    e.push_back(api("SecretKey"));
    e.push_back(api("getLineNumber"));
    e.push_back(permission("BLUETOOTH"));
    e.push_back(permission("DEVICE POWER"));
    e.push_back(permission("READ EXTERNAL STORAGE"));
    e.push_back(permission("BROADCAST WAP PUSH"));
    e.push_back(permission("FLASHLIGHT"));
    e.push_back(permission("HARDWARE TEST"));
    e.push_back(permission("WRITE SECURE SETTINGS"));
    e.push_back(api("Runtime"));
    e.push_back(permission("INTERNET"));
    e.push_back(permission("READ CONTACTS"));
    e.push_back(permission("RECORD AUDIO"));
    e.push_back(intent_action("Intent.action.RUN", {"Intent.action.RUN", "intent.action.RUN"}));
    e.push_back(permission("REBOOT"));
    // Table-width truncation of ACCESS_LOCATION_EXTRA_COMMANDS; the patterns
    // target the real constant.
    e.push_back(permission_patterns("ACCESS LOCATION EXTRA CS",
                                    {"ACCESS_LOCATION_EXTRA_COMMANDS",
                                     "android.permission.ACCESS_LOCATION_EXTRA_COMMANDS"}));
    e.push_back(permission("READ HISTORY BOOKMARKS", "com.android.browser.permission."));
    e.push_back(api("getNetworkOperator"));
    e.push_back(permission("EXPAND STATUS BAR"));
    e.push_back(command("jar"));
    e.push_back(api("DexClassLoader"));
    e.push_back(permission("WRITE HISTORY BOOKMARKS", "com.android.browser.permission."));
    e.push_back(permission("CHANGE NETWORK STATE"));
    e.push_back(api("getDeviceId"));
    e.push_back(permission("STATUS BAR"));
    e.push_back(permission("SET WALLPAPER"));
    e.push_back(api_patterns("HttpGet init", {"HttpGet;-><init>", "HttpGet <init>"}));
    e.push_back(api("getPackageManager"));
    e.push_back(api("getCallState"));
    e.push_back(command("apk"));

    return FeatureCatalog("builtin-100.v1", std::move(e));
}

}  // namespace

const FeatureCatalog& default_catalog() {
    static const FeatureCatalog catalog = build_default_catalog();
    return catalog;
}

}  // namespace eigenscan
